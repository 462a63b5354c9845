"""Exception hierarchy shared by every module of the package."""


class PonceletError(Exception):
    """Base class for all errors raised by :mod:`poncelet`."""


class NotALine(PonceletError, ValueError):
    pass


class IndeterminateConic(PonceletError, ValueError):
    pass


class SingularMap(PonceletError, ValueError):
    pass


class TiltNotSupported(PonceletError, ValueError):
    pass


class NotNested(PonceletError, ValueError):
    pass


class OutOfDomain(PonceletError, ValueError):
    pass


class CircularOuter(PonceletError, ValueError):
    """Raised where a formula divides by the outer ellipse's focal length."""


class EmptyCurve(PonceletError, ValueError):
    pass


class NumericalFailure(PonceletError, ArithmeticError):
    pass


class NotAPorism(PonceletError, ValueError):
    pass


class SeedOutOfDisk(PonceletError, ValueError):
    pass


class SeedInvalid(PonceletError, ValueError):
    pass


class NotAConicCaustic(PonceletError, ArithmeticError):
    pass


class DegenerateTriangle(PonceletError, ValueError):
    pass


class CenterUndefined(PonceletError, ArithmeticError):
    pass


class CenterAtInfinity(CenterUndefined):
    pass


class ConjugateUndefined(PonceletError, ArithmeticError):
    pass


class LocusUnreliable(PonceletError, RuntimeError):
    pass


class AmbiguousFit(PonceletError, RuntimeError):
    """Two candidate conics explain the samples about equally well."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class DegeneratesToLine(PonceletError, ArithmeticError):
    """A closed-form circle has infinite radius; ``line`` holds the limit."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class NotOnETriangle(PonceletError, ValueError):
    pass

"""Numerical tolerances.

Every threshold used by the library lives here so that a single knob
(``PONCELET_TOL`` in the environment, or ``--tol`` on the command line)
can tighten or relax the geometric default.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

DEFAULT_GEOM_TOL = 1e-9


def _env_tol() -> float:
    raw = os.environ.get("PONCELET_TOL")
    if raw is None or raw.strip() == "":
        return DEFAULT_GEOM_TOL
    value = float(raw)
    if not value > 0:
        raise ValueError(f"PONCELET_TOL must be positive, got {raw!r}")
    return value


@dataclass(frozen=True)
class Tolerances:
    geom: float = DEFAULT_GEOM_TOL
    # locus classification thresholds
    point: float = 1e-8
    line: float = 1e-8
    conic: float = 1e-7
    # closed form vs fit comparison
    rel: float = 1e-6
    abs_near_zero: float = 1e-8
    # conserved quantity spread, relative to max(|value|, 1)
    invariant: float = 1e-9
    # equilateral degeneracy suite, normalized units
    suite: float = 1e-7

    def with_geom(self, geom: float) -> "Tolerances":
        return replace(self, geom=geom)


def default_tolerances() -> Tolerances:
    return Tolerances(geom=_env_tol())

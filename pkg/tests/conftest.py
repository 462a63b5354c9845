import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from poncelet.conic import Ellipse

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# outer ellipses (a, 1) with 1 < a/b < 3
aspect = st.floats(min_value=1.05, max_value=3.0, allow_nan=False)
phase = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False, exclude_max=True)


@pytest.fixture
def outer():
    return Ellipse(1.5, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def interior_center(a: float, b: float, u: float, v: float, scale: float = 0.6):
    """Map (u, v) in [-1, 1]^2 to a point well inside the ellipse (a, b)."""
    r = scale * math.sqrt((u * u + v * v) / 2)
    th = math.atan2(v, u)
    return (r * a * math.cos(th), r * b * math.sin(th))


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])

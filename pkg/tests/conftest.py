import numpy as np
import pytest
from hypothesis import strategies as st

from fracrot.poly import PolySeries, from_taylor

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def phi():
    """x**2 + y**2."""
    return from_taylor([(2, 0, 2.0), (0, 2, 2.0)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@st.composite
def series(draw, max_degree=8, min_degree=0):
    degree = draw(st.integers(min_degree, max_degree))
    # magnitudes near underflow would vanish after a few Gamma divisions
    coeff = st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False).filter(
        lambda v: v == 0.0 or abs(v) > 1e-100
    )
    coeffs = {}
    for total in range(degree + 1):
        for n in range(total + 1):
            if draw(st.booleans()):
                coeffs[(n, total - n)] = draw(coeff)
    return PolySeries(degree, coeffs)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from monofun.scalar import ExponentPair

from acceptance_checks import pair_grid  # noqa: F401

settings.register_profile("default", max_examples=200, deadline=None, derandomize=True)
settings.load_profile("default")


@st.composite
def exponent_pairs(draw, strict=False, min_p=0.02):
    """Valid (p, q); ``strict`` forces q - p >= 0.01."""
    if strict:
        p = draw(st.floats(min_p, 0.99))
        return ExponentPair(p, draw(st.floats(p + 0.01, 1.0)))
    p = draw(st.floats(min_p, 1.0))
    if draw(st.integers(0, 9)) == 0:
        return ExponentPair(p, p)
    return ExponentPair(p, draw(st.floats(p, 1.0)))


log_uniform = st.floats(-6.0, 6.0).map(lambda e: 10.0**e)


@pytest.fixture
def half_one():
    return ExponentPair(0.5, 1.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULT_LINES
    except ImportError:
        return
    if RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in RESULT_LINES:
            terminalreporter.write_line(line)

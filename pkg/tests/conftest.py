import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cliff13.algebra import Multivector

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

finite = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)


@st.composite
def multivectors(draw, real=False):
    re = draw(st.lists(finite, min_size=16, max_size=16))
    im = [0.0] * 16 if real else draw(st.lists(finite, min_size=16, max_size=16))
    return Multivector(np.array(re) + 1j * np.array(im))


@st.composite
def bivectors(draw, bound=1.0):
    c = np.zeros(16)
    vals = draw(st.lists(st.floats(-bound, bound, allow_nan=False), min_size=6, max_size=6))
    c[[3, 5, 9, 6, 10, 12]] = vals
    return Multivector(c)


points = st.lists(st.floats(-0.5, 0.5, allow_nan=False), min_size=4, max_size=4).map(np.array)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

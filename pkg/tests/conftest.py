import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

finite = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)


@st.composite
def complex_matrices(draw, rows=2, cols=2):
    re = draw(st.lists(finite, min_size=rows * cols, max_size=rows * cols))
    im = draw(st.lists(finite, min_size=rows * cols, max_size=rows * cols))
    return (np.array(re) + 1j * np.array(im)).reshape(rows, cols)


@st.composite
def invertible_2x2(draw, min_det=1e-3):
    m = draw(complex_matrices())
    from hypothesis import assume

    assume(abs(np.linalg.det(m)) >= min_det)
    return m


@st.composite
def unitaries(draw):
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    from eqchan.sim import haar_unitary

    return haar_unitary(np.random.default_rng(seed))


def random_density(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)

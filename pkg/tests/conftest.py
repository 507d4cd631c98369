import numpy as np
import pytest

from dispersion import _accel

ACCEPTANCE_LINES = []


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test once on the compiled kernels and once on the numpy fallback."""
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba path disabled")
    monkeypatch.setattr(_accel, "HAVE_NUMBA", request.param == "numba")
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

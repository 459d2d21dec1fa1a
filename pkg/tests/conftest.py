import numpy as np
import pytest

from grovermem import kernels
from grovermem.statevector import StateVector

DIMS = [2, 4, 8, 16, 64, 80, 1024]


def random_state(n, rng):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return StateVector(v / np.linalg.norm(v))


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    """Run the test once per available kernel backend."""
    previous = kernels.BACKEND
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)


_ACCEPTANCE = []


def pytest_addoption(parser):
    parser.addoption("--kernel-backend", default=None, help="force a kernel backend (python or cython)")


def pytest_configure(config):
    if config.getoption("--kernel-backend"):
        kernels.set_backend(config.getoption("--kernel-backend"))
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None and (report.when == "call" or report.failed):
        _ACCEPTANCE.append((marker.args[0], marker.args[1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section(f"acceptance criteria (kernel backend: {kernels.BACKEND})")
    for number, title, outcome in sorted(_ACCEPTANCE, key=lambda t: int(t[0])):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")

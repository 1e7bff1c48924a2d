import numpy as np
import pytest

from morphdet import _kernels_py, kernels

try:
    from morphdet import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

BACKENDS = ["python"] + (["cython"] if _kernels_c is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    impl = _kernels_c if request.param == "cython" else _kernels_py
    for name in ("erode_planes", "dilate_planes", "open_close_heights"):
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_LINES] = []


@pytest.fixture
def report(request):
    """Record one pass/fail line for an acceptance criterion, then assert it."""
    lines = request.config.stash[_ACCEPTANCE_LINES]

    def _report(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line

    return _report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

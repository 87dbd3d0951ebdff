import pytest

from actpure import kernels, _pykernels
from actpure.core import validate_act, validate_monoid
from actpure.enumeration import build_catalog


@pytest.fixture(scope="session")
def S3():
    # left-zero semigroup {r, s} with identity adjoined
    return validate_monoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0, ["1", "r", "s"], "S3")


@pytest.fixture(scope="session")
def B(S3):
    return validate_act(S3, [[0, 0, 0], [1, 1, 1], [2, 0, 1]], ["p", "q", "u"], "B")


@pytest.fixture(scope="session")
def PQ(S3):
    return validate_act(S3, [[0, 0, 0], [1, 1, 1]], ["p", "q"], "PQ")


@pytest.fixture(scope="session")
def E2():
    # {1, e} with e idempotent
    return validate_monoid([[0, 1], [1, 1]], 0, ["1", "e"], "E2")


@pytest.fixture(scope="session")
def Z2():
    return validate_monoid([[0, 1], [1, 0]], 0, ["1", "g"], "Z2")


@pytest.fixture(scope="session")
def T1():
    return validate_monoid([[0]], 0, ["1"], "T1")


@pytest.fixture(scope="session")
def catalog():
    return build_catalog(3, 4)


@pytest.fixture(scope="session")
def small_catalog():
    return build_catalog(3, 3)


@pytest.fixture(params=["python", "compiled"])
def kernel_impl(request, monkeypatch):
    """Run a test once per kernel implementation."""
    if request.param == "compiled":
        if kernels.IMPLEMENTATION != "cython":
            pytest.skip("compiled kernels not built")
        return kernels
    monkeypatch.setattr(kernels, "hom_search", _pykernels.hom_search)
    monkeypatch.setattr(kernels, "unextendable", _pykernels.unextendable)
    return kernels


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one verdict line per acceptance criterion."""

    def log(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

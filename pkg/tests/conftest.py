import random

import pytest

from geodist import kernels

ACCEPTANCE_RESULTS = []


@pytest.fixture
def record():
    """Record one acceptance-criterion verdict for the terminal summary."""
    def _record(label, passed, detail=""):
        ACCEPTANCE_RESULTS.append((label, bool(passed), detail))
        return passed
    return _record


@pytest.fixture
def rng():
    return random.Random(12345)


IMPLS = [kernels.PYTHON] + ([kernels.COMPILED] if kernels.HAVE_COMPILED else [])


@pytest.fixture(params=IMPLS)
def impl(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_RESULTS:
        line = f"[{'PASS' if passed else 'FAIL'}] {label}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)

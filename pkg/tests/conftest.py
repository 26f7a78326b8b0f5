import time

import pytest

from ctxbound.partition import max_overlap_set_search

ACCEPTANCE_RESULTS = {}


def _timed_search(mode):
    t0 = time.perf_counter()
    r = max_overlap_set_search(2, mode)
    return r, time.perf_counter() - t0


@pytest.fixture(scope="session")
def literal_search_timed():
    return _timed_search("literal")


@pytest.fixture(scope="session")
def literal_search(literal_search_timed):
    return literal_search_timed[0]


@pytest.fixture(scope="session")
def refined_search():
    return _timed_search("refined")[0]


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, passed, detail)."""

    def record(number, passed, detail):
        ACCEPTANCE_RESULTS[number] = (passed, detail)
        print(f"ACCEPTANCE {number:>2} {'PASS' if passed else 'FAIL'}: {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{number:>2}] {'PASS' if passed else 'FAIL'}  {detail}")

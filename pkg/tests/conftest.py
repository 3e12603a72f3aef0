import pytest

from nullstrata.rootsys import build_root_datum
from nullstrata.strata import Engine


@pytest.fixture(scope="session")
def engine():
    return Engine()


@pytest.fixture(scope="session")
def datum():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_root_datum(name)
        return cache[name]

    return get


# filled by the acceptance module: criterion number -> (passed, detail)
ACCEPTANCE_RESULTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if passed else 'FAIL'}  {detail}")

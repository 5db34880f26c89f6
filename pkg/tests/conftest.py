import pytest

from modverify.maass import solve
from modverify.qexp import cusp_eigenforms

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def delta():
    return cusp_eigenforms(12)[0]


@pytest.fixture(scope="session")
def first_even():
    return solve((13.7, 13.85), 0)[0]


@pytest.fixture(scope="session")
def first_odd():
    return solve((9.4, 9.7), 1)[0]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

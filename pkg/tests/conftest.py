import pytest

from prefcons.modeltheory import Space
from prefcons.semantics import Structure


def space_of(kind, atoms):
    return Space.build(Structure(kind, atoms))


@pytest.fixture(scope="session")
def classical_p():
    return space_of("classical", "p")


@pytest.fixture(scope="session")
def classical_pq():
    return space_of("classical", "pq")


@pytest.fixture(scope="session")
def classical_pqr():
    return space_of("classical", "pqr")


@pytest.fixture(scope="session")
def four_p():
    return space_of("four", "p")


@pytest.fixture(scope="session")
def four_pq():
    return space_of("four", "pq")


@pytest.fixture(scope="session")
def j3_p():
    return space_of("j3", "p")


@pytest.fixture(scope="session")
def j3_pq():
    return space_of("j3", "pq")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

import pytest

from netcoherence.experiments import worked_example_spec, worked_example_subgraphs
from netcoherence.graph import CompositeSpec, assemble

_ACCEPTANCE = []


def record_criterion(number, passed, detail):
    _ACCEPTANCE.append((number, passed, detail))


@pytest.fixture(scope="session")
def acceptance_log():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")


@pytest.fixture
def example_subgraphs():
    return worked_example_subgraphs()


@pytest.fixture
def example_composite():
    return assemble(worked_example_spec())[0]


@pytest.fixture
def example_disjoint():
    """The two example subgraphs with no connecting edges (labels 1..7)."""
    g1, g2 = worked_example_subgraphs()
    return assemble(CompositeSpec((g1, g2)))[0]

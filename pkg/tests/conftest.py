import pytest

from ilatpg.cells import cell_from_table

FIG4_TABLE = (1, 0, 3, 7, 6, 4, 5, 2)

# states q0..q3 are the horizontal bit pairs 00, 01, 10, 11
Q0, Q1, Q2, Q3 = range(4)


def code(q, v):
    """Input code of the Fig 4 cell for state q and vertical bit v."""
    return (q << 1) | v


@pytest.fixture
def fig4():
    return cell_from_table(2, 1, FIG4_TABLE)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when == "call" and "test_acceptance.py::test_criterion_" in rep.nodeid:
                name = rep.nodeid.split("::", 1)[1]
                lines.append((name, outcome.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}")

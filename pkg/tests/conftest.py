import pytest

from rmtkernels.orthopoly import PotentialSpec, WeightSpec, build_recurrence

# one line per acceptance criterion, filled by tests/test_acceptance.py and
# replayed after the run (pytest capture would otherwise swallow them)
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


V_X2 = PotentialSpec((0.0, 0.0, 1.0))
V_2X2 = PotentialSpec((0.0, 0.0, 2.0))


@pytest.fixture(scope="session")
def table_gauss_n1():
    """alpha=0, V=x^2, n=1: the plain Gaussian weight."""
    return build_recurrence(WeightSpec(0.0, 1, V_X2), 8)


@pytest.fixture(scope="session")
def table_n8():
    return build_recurrence(WeightSpec(0.0, 8, V_X2), 16)


@pytest.fixture(scope="session")
def table_a03_n8():
    return build_recurrence(WeightSpec(0.3, 8, V_2X2), 16)


@pytest.fixture(scope="session")
def table_n6():
    return build_recurrence(WeightSpec(0.0, 6, V_2X2), 12)

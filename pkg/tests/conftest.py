import pytest

from tropconv import Configuration, MetricMatrix

RUNNING = [[0, 0, 2], [0, 2, 0], [0, 1, -2]]
QUARTET = [[0, 2, 3, 3], [2, 0, 3, 3], [3, 3, 0, 2], [3, 3, 2, 0]]
SQUARE = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]


@pytest.fixture
def running():
    """Three points of TP^2 whose bounded complex is a pentagon with three legs."""
    return Configuration(RUNNING)


@pytest.fixture
def quartet():
    """Leaves of a tree with two cherries, pendant edges 1 and inner edge 1."""
    return MetricMatrix(QUARTET)


@pytest.fixture
def square_metric():
    """Shortest-path metric of the 4-cycle."""
    return MetricMatrix(SQUARE)


_acceptance = {}


@pytest.fixture
def report():
    """Record one pass/fail line for an acceptance criterion."""

    def record(number: int, ok: bool, detail: str):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _acceptance[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_acceptance):
            terminalreporter.write_line(_acceptance[number])

import numpy as np
import pytest

from synthrisk.ingest import ColumnTable

TOY5_ORIG = [("A", "x"), ("A", "y"), ("B", "y"), ("C", "z"), ("D", "x")]
TOY5_SYN = [("A", "x"), ("B", "y"), ("B", "x"), ("E", "z"), ("D", "y")]


def table(rows, names=("k", "t")):
    return ColumnTable.from_rows(list(names), rows)


@pytest.fixture
def toy5():
    return table(TOY5_ORIG), table(TOY5_SYN)


@pytest.fixture
def toy5_pair(toy5):
    from synthrisk.tabulate import build_pair, proportions

    pair = build_pair(toy5[0], toy5[1], ["k"], "t")
    return pair, proportions(pair)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import open_map  # noqa: E402
from pamcpp.instance import Instance, SolverConfig  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def square_instance():
    """4x4 free map, unit costs, one robot at the top-left cell, no zones."""
    return Instance(open_map(4, 4), (), ((0, 0),), SolverConfig())

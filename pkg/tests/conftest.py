import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from heapchrome.graph import Graph


@pytest.fixture
def k2():
    return Graph.complete(2)


@pytest.fixture
def k3():
    return Graph.complete(3)


@pytest.fixture
def p3():
    return Graph.path(3)


@pytest.fixture
def point():
    return Graph.empty(1)


@pytest.fixture
def two_points():
    return Graph.empty(2)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "CRITERION_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

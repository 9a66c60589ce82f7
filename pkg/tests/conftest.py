from __future__ import annotations

import pytest

from simplicia import catalog
from simplicia.core import compact, from_facets

# lines appended by test_acceptance, printed after the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def cat():
    return lambda name: catalog.get(name).complex


@pytest.fixture(scope="session")
def octahedron_s1():
    # the 6-vertex picture sphere S_1: vertex 2 over the square 3456, vertex 1 under it
    return from_facets(compact("134 136 156 145 234 236 245 256"))


@pytest.fixture(scope="session")
def tetra():
    return from_facets(compact("123 124 134 234"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

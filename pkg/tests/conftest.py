import os

os.environ.setdefault("LC_AUDIT_ENABLED", "False")

import pytest

from lattice.lc_lattice import induced_graph

HEXAGON = [(0, 0), (0, 1), (1, 1), (2, 0), (2, -1), (1, -1)]

# Left node (0,0) and right node (4,-1) joined by arcs of length 6 (top) and 5 (bottom)
LONG_ARC = [
    (-1, 0), (0, 0), (0, 1), (0, 2), (1, 2), (2, 1), (3, 0), (4, -1), (5, -1),
    (1, -1), (2, -2), (3, -2), (4, -2),
]


@pytest.fixture
def hexagon():
    return induced_graph(HEXAGON)


@pytest.fixture
def double_pendant():
    """Hexagon with pendants (-1,0) and (3,0): left node (0,0), right node (2,0)"""
    return induced_graph(HEXAGON + [(-1, 0), (3, 0)])


@pytest.fixture
def right_only():
    """Hexagon with the single pendant (3,0): its only node is the right node (2,0)"""
    return induced_graph(HEXAGON + [(3, 0)])


@pytest.fixture
def hanging_cycle():
    """Hexagon hanging on the left node (0,0) through the pendant (-1,0)"""
    return induced_graph(HEXAGON + [(-1, 0)])


@pytest.fixture
def long_arc():
    return induced_graph(LONG_ARC)


@pytest.fixture
def star():
    """Left node (0,0) whose three neighbors are leaves"""
    return induced_graph([(0, 0), (-1, 0), (0, 1), (1, -1)])

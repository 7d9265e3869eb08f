# ============================================================================
# LatticeChoose - Induced subgraphs of the triangular lattice
# ============================================================================
"""
Axial coordinates (x, y); vertex (x, y) has the six neighbors
left (x-1, y), right (x+1, y), top-left (x-1, y+1), top-right (x, y+1),
bottom-left (x, y-1) and bottom-right (x+1, y-1). Graphs store only their
vertex set; edges are always the induced lattice edges.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import networkx as nx

from shared.errors import InputError, PreconditionError, StructuralViolation


class Coord(NamedTuple):
    x: int
    y: int


# Neighbor offsets in the fixed order left, right, top-left, top-right,
# bottom-left, bottom-right
OFFSETS = ((-1, 0), (1, 0), (-1, 1), (0, 1), (0, -1), (1, -1))
LEFT, RIGHT, TOP_LEFT, TOP_RIGHT, BOTTOM_LEFT, BOTTOM_RIGHT = range(6)

_LEFT_PATTERN = frozenset((LEFT, TOP_RIGHT, BOTTOM_RIGHT))
_RIGHT_PATTERN = frozenset((RIGHT, TOP_LEFT, BOTTOM_LEFT))


def neighbors(c) -> tuple:
    """The six lattice neighbors of c, in the fixed offset order"""
    x, y = c
    return tuple(Coord(x + dx, y + dy) for dx, dy in OFFSETS)


class NodeKind(Enum):
    LEFT_NODE = "LeftNode"
    RIGHT_NODE = "RightNode"
    NOT_A_NODE = "NotANode"


# ----------------------------------------------------------------------------
# Graph
# ----------------------------------------------------------------------------
@dataclass(frozen=True)
class LatticeGraph:
    vertices: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(Coord(*v) for v in self.vertices))

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        """Vertices in lexicographic order"""
        return iter(sorted(self.vertices))

    def neighbors(self, v) -> tuple:
        """Present neighbors of v, in offset order"""
        return tuple(u for u in neighbors(v) if u in self.vertices)

    def degree(self, v) -> int:
        return len(self.neighbors(v))

    def edges(self) -> list:
        return [(v, u) for v in self for u in self.neighbors(v) if v < u]

    def without(self, removed) -> "LatticeGraph":
        return LatticeGraph(self.vertices - frozenset(Coord(*v) for v in removed))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self)
        graph.add_edges_from(self.edges())
        return graph


def induced_graph(vertices) -> LatticeGraph:
    return LatticeGraph(frozenset(vertices))


def triangles(graph: LatticeGraph) -> list:
    """Up (v, v+right, v+top-right) and down (v, v+right, v+bottom-right) triangles"""
    found = []
    for x, y in graph:
        right = Coord(x + 1, y)
        if right not in graph:
            continue
        for third in (Coord(x, y + 1), Coord(x + 1, y - 1)):
            if third in graph:
                found.append((Coord(x, y), right, third))
    return found


def is_triangle_free(graph: LatticeGraph) -> bool:
    return not triangles(graph)


def girth_at_least_6(graph: LatticeGraph) -> bool:
    """No cycle of length 3, 4 or 5"""
    if not is_triangle_free(graph):
        raise PreconditionError("girth check needs a triangle-free graph")
    return nx.girth(graph.to_networkx()) >= 6


def components(graph: LatticeGraph) -> list:
    """Connected components, ordered by their smallest vertex"""
    parts = [LatticeGraph(frozenset(part)) for part in nx.connected_components(graph.to_networkx())]
    return sorted(parts, key=lambda part: min(part.vertices))


# ----------------------------------------------------------------------------
# Nodes
# ----------------------------------------------------------------------------
def _pattern(graph: LatticeGraph, v) -> frozenset:
    return frozenset(k for k, u in enumerate(neighbors(v)) if u in graph)


def _in_triangle(graph: LatticeGraph, v) -> bool:
    return any(v in tri for tri in triangles(graph.without(graph.vertices - set(neighbors(v)) - {v})))


def classify_node(graph: LatticeGraph, v) -> NodeKind:
    v = Coord(*v)
    if v not in graph:
        raise InputError(f"vertex {tuple(v)} is not in the graph")
    pattern = _pattern(graph, v)
    if len(pattern) != 3:
        return NodeKind.NOT_A_NODE
    if pattern == _LEFT_PATTERN:
        return NodeKind.LEFT_NODE
    if pattern == _RIGHT_PATTERN:
        return NodeKind.RIGHT_NODE
    if not _in_triangle(graph, v):
        raise StructuralViolation(f"degree-3 vertex {tuple(v)} has an unknown neighbor pattern outside any triangle")
    return NodeKind.NOT_A_NODE


def nodes(graph: LatticeGraph) -> dict:
    """Every degree-3 vertex and its kind"""
    return {v: classify_node(graph, v) for v in graph.vertices if graph.degree(v) == 3}


def cutting_node(graph: LatticeGraph) -> Optional[Coord]:
    """
    Rightmost left node in the highest row that holds any node. None when
    there are no nodes or that row has only right nodes.
    """
    kinds = nodes(graph)
    if not kinds:
        return None
    top = max(v.y for v in kinds)
    lefts = [v for v, kind in kinds.items() if v.y == top and kind is NodeKind.LEFT_NODE]
    return max(lefts, key=lambda v: v.x) if lefts else None


def mirror_coord(c) -> Coord:
    """f(x, y) = (-x - y, y); an involution that swaps left and right nodes"""
    return Coord(-c[0] - c[1], c[1])


def mirror(graph: LatticeGraph):
    """(mirrored graph, {original vertex: mirrored vertex})"""
    mapping = {v: mirror_coord(v) for v in graph}
    return LatticeGraph(frozenset(mapping.values())), mapping


# ----------------------------------------------------------------------------
# Handles
# ----------------------------------------------------------------------------
@dataclass(frozen=True)
class Handle:
    vertices: tuple

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def interior(self) -> frozenset:
        return frozenset(self.vertices[1:-1])

    @property
    def endpoints(self) -> tuple:
        return self.vertices[0], self.vertices[-1]

    @property
    def self_returning(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    def to_dict(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


@dataclass(frozen=True)
class HandleContext:
    handle: Handle
    v3: Coord
    v4: Coord
    v5: Optional[Coord]
    u: Coord

    def to_dict(self) -> dict:
        return {
            "handle": self.handle.to_dict(),
            "v3": list(self.v3),
            "v4": list(self.v4),
            "v5": list(self.v5) if self.v5 is not None else None,
            "u": list(self.u),
        }


def _walk(graph: LatticeGraph, start: Coord, first: Coord) -> list:
    """Follow degree-2 vertices from start through first until a vertex of another degree"""
    path = [start, first]
    previous, current = start, first
    while graph.degree(current) == 2:
        a, b = graph.neighbors(current)
        previous, current = current, (b if a == previous else a)
        path.append(current)
    return path


def _canonical(path: list) -> tuple:
    if path[-1] < path[0]:
        path = path[::-1]
    elif path[0] == path[-1] and path[1] > path[-2]:
        path = path[::-1]
    return tuple(path)


def find_handles(graph: LatticeGraph) -> list:
    """Maximal node-to-node paths with degree-2 interiors, each once, canonical orientation"""
    seen = {}
    for v in graph:
        if graph.degree(v) != 3:
            continue
        for u in graph.neighbors(v):
            path = _walk(graph, v, u)
            if graph.degree(path[-1]) == 3:
                key = _canonical(path)
                seen.setdefault(key, Handle(key))
    return list(seen.values())


def cutting_handle(graph: LatticeGraph) -> Optional[Handle]:
    """
    The handle leaving the cutting node (x, y) through (x, y+1). None when
    there is no cutting node or the walk dead-ends at a degree <= 1 vertex.
    """
    start = cutting_node(graph)
    if start is None:
        return None
    path = _walk(graph, start, Coord(start.x, start.y + 1))
    if graph.degree(path[-1]) != 3:
        return None
    handle = Handle(tuple(path))
    if handle.self_returning:
        logging.warning(f"[Lattice] cutting handle returns to its node {tuple(start)} (length {handle.length})")
    return handle


def cutting_dead_end(graph: LatticeGraph) -> Optional[Coord]:
    """Degree <= 1 vertex where the walk from the cutting node stops, if it does"""
    start = cutting_node(graph)
    if start is None:
        return None
    end = _walk(graph, start, Coord(start.x, start.y + 1))[-1]
    return end if graph.degree(end) <= 1 else None


def short_handle_context(graph: LatticeGraph, handle: Handle) -> HandleContext:
    """
    A cutting handle of length <= 3 has length exactly 3 and its far end v3
    has a neighbor v4 != v2 of degree <= 2. Right neighbor of v3 is tried
    first, then lexicographic order.
    """
    if handle.length > 3:
        raise PreconditionError(f"short handle context needs length <= 3, got {handle.length}")
    if handle.length < 3:
        raise StructuralViolation(f"cutting handle {handle.vertices} has length {handle.length} < 3")
    v2, v3 = handle.vertices[2], handle.vertices[3]
    right = Coord(v3.x + 1, v3.y)
    candidates = sorted((w for w in graph.neighbors(v3) if w != v2 and graph.degree(w) <= 2),
                        key=lambda w: (w != right, w))
    if not candidates:
        raise StructuralViolation(f"no neighbor of degree <= 2 next to {tuple(v3)}")
    v4 = candidates[0]
    v5 = None
    if graph.degree(v4) == 2:
        v5 = next(w for w in graph.neighbors(v4) if w != v3)
    others = [w for w in graph.neighbors(v3) if w not in (v2, v4)]
    if len(others) != 1:
        raise StructuralViolation(f"{tuple(v3)} is not a node of degree 3")
    return HandleContext(handle, v3, v4, v5, others[0])

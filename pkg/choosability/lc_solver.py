# ============================================================================
# LatticeChoose - (a,b)-coloring of triangle-free lattice subgraphs
# ============================================================================
"""
Handle decomposition. While the graph has nodes, take the cutting
handle (mirroring once if the top node row holds only right nodes), solve
the graph without the handle interior and extend the coloring across the
handle. Node-free graphs are unions of paths and cycles and go to solve_base.

Every list has a = 2b + e colors and a/b >= 5/2, so Even(2b/e) <= 4: handles
of length >= 4 take the long extension, length 3 takes the short one.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from lattice.lc_lattice import (
    Coord, Handle, HandleContext, LatticeGraph, components, cutting_dead_end, cutting_handle,
    mirror, short_handle_context, triangles,
)
from oracle.lc_oracle import solve_cycle_exact
from shared.coloring import (
    EMPTY, ProblemParams, as_color_sets, list_sizes_ok, uniform_weights, verify_coloring,
)
from shared.errors import (
    ExtensionFailure, InputError, PreconditionError, RatioGateError, StructuralViolation,
)
from waterfall.lc_waterfall import (
    WaterfallStats, WeightedPath, color_handle_long, color_handle_short, even_ceil, trim_end_lists,
)


class StepKind(Enum):
    LONG_HANDLE = "LongHandle"
    SHORT_HANDLE = "ShortHandle"
    MIRROR = "Mirror"
    BASE_COMPONENT = "BaseComponent"
    PENDANT = "Pendant"


@dataclass(frozen=True)
class DecompositionStep:
    kind: StepKind
    handle: Optional[Handle] = None
    context: Optional[HandleContext] = None
    vertex: Optional[Coord] = None
    base_kind: Optional[str] = None     # isolated | path | even-cycle | odd-cycle
    size: int = 0

    def to_dict(self) -> dict:
        step = {"kind": self.kind.value, "size": self.size}
        if self.handle is not None:
            step["handle"] = self.handle.to_dict()
        if self.context is not None:
            step["context"] = self.context.to_dict()
        if self.vertex is not None:
            step["vertex"] = list(self.vertex)
        if self.base_kind is not None:
            step["base_kind"] = self.base_kind
        return step


@dataclass(frozen=True)
class SolveInstance:
    graph: LatticeGraph
    lists: dict
    params: ProblemParams

    @classmethod
    def build(cls, graph: LatticeGraph, lists, params: ProblemParams) -> "SolveInstance":
        return cls(graph, {Coord(*v): s for v, s in as_color_sets(lists).items()}, params)


# ----------------------------------------------------------------------------
# Base components (maximum degree <= 2)
# ----------------------------------------------------------------------------
def _traverse(component: LatticeGraph, start: Coord, first: Optional[Coord]) -> list:
    order = [start]
    previous, current = start, first
    while current is not None and current != start:
        order.append(current)
        ahead = [w for w in component.neighbors(current) if w != previous]
        previous, current = current, (ahead[0] if ahead else None)
    return order


def solve_base(component: LatticeGraph, lists, params: ProblemParams, steps: Optional[list] = None) -> dict:
    """
    Isolated vertices and paths are colored greedily (lowest b free colors,
    a - b >= b leaves room). Cycles go to the exact oracle, even cycles first
    on the 2b lowest colors of each list.
    """
    b = params.b
    vertices = list(component)
    if any(component.degree(v) > 2 for v in vertices):
        raise PreconditionError("solve_base needs a component of maximum degree <= 2")
    edge_count = len(component.edges())
    coloring = {}

    if len(vertices) == 1:
        kind = "isolated"
        coloring[vertices[0]] = lists[vertices[0]].lowest(b)
    elif edge_count == len(vertices) - 1:
        kind = "path"
        start = min(v for v in vertices if component.degree(v) == 1)
        previous = EMPTY
        for v in _traverse(component, start, component.neighbors(start)[0]):
            previous = (lists[v] - previous).lowest(b)
            coloring[v] = previous
    else:
        start = vertices[0]
        order = _traverse(component, start, min(component.neighbors(start)))
        kind = "even-cycle" if len(order) % 2 == 0 else "odd-cycle"
        found = None
        if kind == "even-cycle":
            sub = WeightedPath.of([lists[v].lowest(2 * b) for v in order], b)
            found = solve_cycle_exact(sub)
        if found is None:
            found = solve_cycle_exact(WeightedPath.of([lists[v] for v in order], b))
        if found is None:
            raise PreconditionError(f"no coloring of the {kind} through {tuple(start)}")
        coloring = {v: found[i] for i, v in enumerate(order)}

    logging.debug(f"[Solver] base {kind} with {len(vertices)} vertices at {tuple(vertices[0])}")
    if steps is not None:
        steps.append(DecompositionStep(StepKind.BASE_COMPONENT, vertex=vertices[0],
                                       base_kind=kind, size=len(vertices)))
    return coloring


# ----------------------------------------------------------------------------
# Decomposition
# ----------------------------------------------------------------------------
@dataclass(frozen=True)
class _Frame:
    """A peeled step waiting for its extension"""
    step: DecompositionStep
    neighbors: tuple = ()
    mapping: Optional[dict] = None
    outer: Optional[dict] = None


class _Decomposer:
    """
    Peels steps off the graph onto a stack, colors the node-free remainder
    and then unwinds the stack, applying the extensions in reverse order.
    Mirror frames move the lists into image coordinates while peeling and
    move them back while unwinding.
    """

    def __init__(self, lists: dict, params: ProblemParams, stats: Optional[WaterfallStats]):
        self.lists = lists
        self.params = params
        self.stats = stats
        self.steps = []
        self.threshold = even_ceil(Fraction(2 * params.b, params.e))

    def solve(self, graph: LatticeGraph) -> dict:
        frames, remainder = self._peel(graph)
        coloring = {}
        for part in components(remainder):
            coloring.update(solve_base(part, self.lists, self.params, self.steps))
        for frame in reversed(frames):
            coloring = self._extend(frame, coloring)
        return coloring

    def _peel(self, graph: LatticeGraph):
        frames = []
        mirrored = False
        while any(graph.degree(v) == 3 for v in graph.vertices):
            frame = self._next_frame(graph, mirrored)
            frames.append(frame)
            self.steps.append(frame.step)
            mirrored = frame.step.kind is StepKind.MIRROR
            if mirrored:
                self.lists = {frame.mapping[v]: frame.outer[v] for v in graph}
                graph = LatticeGraph(frozenset(frame.mapping.values()))
            elif frame.step.kind is StepKind.PENDANT:
                graph = graph.without([frame.step.vertex])
            else:
                graph = graph.without(frame.step.handle.interior)
        return frames, graph

    def _next_frame(self, graph: LatticeGraph, mirrored: bool) -> _Frame:
        handle = cutting_handle(graph)
        if handle is not None:
            if handle.length >= self.threshold:
                step = DecompositionStep(StepKind.LONG_HANDLE, handle=handle, size=handle.length - 1)
            else:
                context = short_handle_context(graph, handle)
                step = DecompositionStep(StepKind.SHORT_HANDLE, handle=handle, context=context,
                                         size=handle.length - 1)
            return _Frame(step)

        dead_end = cutting_dead_end(graph)
        if dead_end is not None:
            return _Frame(DecompositionStep(StepKind.PENDANT, vertex=dead_end, size=1),
                          neighbors=tuple(graph.neighbors(dead_end)))
        if mirrored:
            raise StructuralViolation("mirrored graph still has no cutting node")
        _, mapping = mirror(graph)
        return _Frame(DecompositionStep(StepKind.MIRROR, size=len(graph)), mapping=mapping, outer=self.lists)

    def _extend(self, frame: _Frame, coloring: dict) -> dict:
        kind = frame.step.kind
        if kind is StepKind.MIRROR:
            self.lists = frame.outer
            return {v: coloring[image] for v, image in frame.mapping.items()}
        if kind is StepKind.PENDANT:
            return self._pendant(frame.step.vertex, frame.neighbors, coloring)
        if kind is StepKind.LONG_HANDLE:
            return self._long(frame.step.handle, coloring)
        return self._short(frame.step.handle, frame.step.context, coloring)

    def _pendant(self, v: Coord, neighbors: tuple, coloring: dict) -> dict:
        taken = EMPTY
        for u in neighbors:
            taken = taken | coloring[u]
        coloring[v] = (self.lists[v] - taken).lowest(self.params.b)
        return coloring

    def _long(self, handle: Handle, coloring: dict) -> dict:
        first, last = handle.endpoints
        inner = handle.vertices[1:-1]
        path = WeightedPath.of([coloring[first]] + [self.lists[v] for v in inner] + [coloring[last]],
                               self.params.b)
        extension = color_handle_long(path, self.params, self.stats)
        for i, v in enumerate(inner, start=1):
            coloring[v] = extension[i]
        return coloring

    def _short(self, handle: Handle, context: HandleContext, coloring: dict) -> dict:
        v0, v1, v2, v3 = handle.vertices
        v4, v5, u = context.v4, context.v5, context.u
        old3, old4 = coloring.pop(v3), coloring.pop(v4)
        tail = self.lists[v3] - coloring[u]
        end = self.lists[v4] - (coloring[v5] if v5 is not None else EMPTY)
        tail, end = trim_end_lists(tail, end, self.params, keep_tail=old3, keep_end=old4)
        path = WeightedPath.of([coloring[v0], self.lists[v1], self.lists[v2], tail, end], self.params.b)
        extension = color_handle_short(path, self.params, self.stats)
        for i, v in enumerate((v1, v2, v3, v4), start=1):
            coloring[v] = extension[i]
        return coloring


def _validate(instance: SolveInstance):
    graph, lists, params = instance.graph, instance.lists, instance.params
    if set(lists) != set(graph.vertices):
        raise InputError("lists and graph cover different vertices")
    if params.b < 1:
        raise InputError(f"demand b must be at least 1, got {params.b}")
    if not params.ratio_ok:
        raise RatioGateError(f"a/b = {params.a}/{params.b} < 5/2")
    found = triangles(graph)
    if found:
        shown = [[list(v) for v in tri] for tri in found[:5]]
        raise InputError(f"graph has {len(found)} triangle(s), e.g. {shown}")
    if not list_sizes_ok(lists, params.a):
        wrong = [v for v in graph if len(lists[v]) != params.a]
        v = wrong[0]
        raise InputError(f"list of {tuple(v)} has {len(lists[v])} colors, expected a = {params.a}")


def solve(instance: SolveInstance, stats: Optional[WaterfallStats] = None):
    """(coloring, decomposition steps); the coloring is verified before return"""
    _validate(instance)
    graph, lists, params = instance.graph, instance.lists, instance.params
    decomposer = _Decomposer(lists, params, stats)
    try:
        coloring = decomposer.solve(graph)
    except PreconditionError as e:
        raise ExtensionFailure(f"extension step failed: {e}", decomposer.steps) from e

    coloring = {v: coloring[v] for v in graph}
    report = verify_coloring(graph.edges(), lists, uniform_weights(graph, params.b), coloring)
    if not report:
        raise ExtensionFailure(f"final coloring does not verify: {report.describe()}", decomposer.steps)
    logging.debug(f"[Solver] colored {len(graph)} vertices in {len(decomposer.steps)} steps")
    return coloring, decomposer.steps


def solve_5m_2m(graph: LatticeGraph, lists, m: int) -> dict:
    """(5m, 2m) case: a = 5m, b = 2m, e = m"""
    coloring, _ = solve(SolveInstance.build(graph, lists, ProblemParams.from_m(m)))
    return coloring

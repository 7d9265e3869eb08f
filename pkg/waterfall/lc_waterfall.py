# ============================================================================
# LatticeChoose - Waterfall lists on weighted paths
# ============================================================================
"""
Weighted paths P_{n+1} (vertices 0..n), waterfall lists, the similarity
transformation with its coloring pullback, amplitude / Hall criteria and the
two handle-extension theorems used by the lattice solver.

Pipeline for coloring a good path:
    waterfall_transform -> waterfall_color -> pullback_coloring
"""

import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from shared.coloring import (
    EMPTY, ColorSet, ProblemParams, lists_from_sequence, path_edges, verify_coloring,
)
from shared.errors import DegenerateExcessError, PreconditionError


# ----------------------------------------------------------------------------
# Types
# ----------------------------------------------------------------------------
@dataclass(frozen=True)
class WeightedPath:
    """Path with lists L(0..n) and demands w(0..n)"""

    lists: tuple
    weights: tuple

    def __post_init__(self):
        lists = tuple(s if isinstance(s, ColorSet) else ColorSet(s) for s in self.lists)
        weights = tuple(int(w) for w in self.weights)
        if len(lists) != len(weights):
            raise PreconditionError(f"{len(lists)} lists but {len(weights)} weights")
        if any(w < 0 for w in weights):
            raise PreconditionError("weights must be nonnegative")
        object.__setattr__(self, "lists", lists)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def of(cls, lists, weights) -> "WeightedPath":
        """Build from color iterables; an int weight means uniform demand"""
        lists = tuple(lists)
        if isinstance(weights, int):
            weights = (weights,) * len(lists)
        return cls(lists, tuple(weights))

    @property
    def n(self) -> int:
        """Length of the path (number of edges)"""
        return len(self.lists) - 1

    def __len__(self):
        return len(self.lists)

    def edges(self) -> list:
        return path_edges(len(self.lists))

    def list_map(self) -> dict:
        return lists_from_sequence(self.lists)

    def weight_map(self) -> dict:
        return dict(enumerate(self.weights))

    def replace(self, index: int, colors: Optional[ColorSet] = None,
                weight: Optional[int] = None) -> "WeightedPath":
        lists, weights = list(self.lists), list(self.weights)
        if colors is not None:
            lists[index] = colors
        if weight is not None:
            weights[index] = weight
        return WeightedPath(tuple(lists), tuple(weights))

    def with_lists(self, lists) -> "WeightedPath":
        return WeightedPath(tuple(lists), self.weights)


@dataclass(frozen=True)
class ColorSpan:
    color: int
    first: int
    last: int


@dataclass(frozen=True)
class Replacement:
    """Color old replaced by the fresh color new on indices start..end"""

    old: int
    new: int
    start: int
    end: int


@dataclass(frozen=True)
class TransformTrace:
    """
    relabel[k] maps an input color at index k to its canonical color,
    inverse maps canonical colors back to input colors, start_lists is the
    canonical list before the replacement loop.
    """

    relabel: tuple
    inverse: dict
    start_lists: tuple
    records: tuple = ()

    @property
    def is_identity(self) -> bool:
        return not self.records and all(k == v for k, v in self.inverse.items())

    def stages(self) -> list:
        """List states: stages[0] = start_lists, stages[r+1] after record r"""
        states = [self.start_lists]
        current = list(self.start_lists)
        for rec in self.records:
            swap = ColorSet((rec.new,))
            drop = ColorSet((rec.old,))
            for k in range(rec.start, rec.end + 1):
                current[k] = (current[k] - drop) | swap
            states.append(tuple(current))
        return states

    def replay(self, lists) -> tuple:
        """Apply the relabeling and every replacement to an input list"""
        renamed = tuple(ColorSet(self.relabel[k][x] for x in s) for k, s in enumerate(lists))
        if renamed != tuple(self.start_lists):
            raise PreconditionError("trace was not produced from this list")
        return self.stages()[-1]


@dataclass
class WaterfallStats:
    """Counts how waterfall_color produced its colorings"""

    greedy: int = 0
    fallback: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def record(self, used_fallback: bool):
        with self.lock:
            if used_fallback:
                self.fallback += 1
            else:
                self.greedy += 1


# ----------------------------------------------------------------------------
# Predicates and amplitude
# ----------------------------------------------------------------------------
def is_waterfall(path: WeightedPath) -> bool:
    """L(i) ∩ L(j) = ∅ whenever |i - j| >= 2"""
    seen = 0          # union of L(0..i-2)
    for i, colors in enumerate(path.lists):
        if colors.bits & seen:
            return False
        if i >= 1:
            seen |= path.lists[i - 1].bits
    return True


def amplitude(path: WeightedPath, i: int, j: int) -> ColorSet:
    """A(i,j) = L(i) ∪ ... ∪ L(j)"""
    if not 0 <= i <= j <= path.n:
        raise IndexError(f"amplitude range ({i},{j}) outside 0..{path.n}")
    bits = 0
    for k in range(i, j + 1):
        bits |= path.lists[k].bits
    return ColorSet.from_bits(bits)


def is_good(path: WeightedPath) -> bool:
    """|L(i)| >= w(i) + w(i+1) for every interior index; endpoints exempt"""
    return all(len(path.lists[i]) >= path.weights[i] + path.weights[i + 1]
               for i in range(1, path.n))


def color_spans(path: WeightedPath) -> dict:
    """First and last index of every color (consecutive after normalization)"""
    spans = {}
    for k, colors in enumerate(path.lists):
        for x in colors:
            first = spans[x].first if x in spans else k
            spans[x] = ColorSpan(x, first, k)
    return spans


# ----------------------------------------------------------------------------
# Similarity transformation
# ----------------------------------------------------------------------------
def _normalize(lists):
    """Give every later run of a color a fresh color so runs are consecutive"""
    fresh = max((s.max_color() for s in lists), default=-1) + 1
    run_label = {}
    forward = []
    for k, colors in enumerate(lists):
        mapping = {}
        for x in colors:
            if x not in run_label:
                run_label[x] = x
            elif not (k > 0 and x in lists[k - 1]):
                run_label[x] = fresh
                fresh += 1
            mapping[x] = run_label[x]
        forward.append(mapping)
    return forward


def _canonical_order(forward, count):
    """Rename normalized colors 1, 2, ... sorted by (first index, last index)"""
    spans = {}
    for k in range(count):
        for label in forward[k].values():
            first = spans[label][0] if label in spans else k
            spans[label] = (first, k)
    ordered = sorted(spans, key=lambda c: (spans[c][0], spans[c][1], c))
    return {label: rank for rank, label in enumerate(ordered, start=1)}


def waterfall_transform(path: WeightedPath):
    """
    Build a waterfall list similar to a good list, with the same list sizes.

    Returns (transformed path, TransformTrace). A list that is already
    waterfall is returned unchanged with an identity trace.
    """
    if not is_good(path):
        raise PreconditionError("waterfall_transform needs a good list")

    if is_waterfall(path):
        relabel = tuple({x: x for x in s} for s in path.lists)
        inverse = {x: x for s in path.lists for x in s}
        return path, TransformTrace(relabel, inverse, path.lists)

    forward = _normalize(path.lists)
    canon = _canonical_order(forward, len(path.lists))
    relabel = tuple({x: canon[label] for x, label in mapping.items()} for mapping in forward)
    inverse = {}
    for k, mapping in enumerate(relabel):
        for x, c in mapping.items():
            inverse[c] = x
    start = tuple(ColorSet(mapping.values()) for mapping in relabel)

    lists = list(start)
    spans = {}
    for k, colors in enumerate(lists):
        for x in colors:
            spans[x] = (spans[x][0] if x in spans else k, k)
    fresh = len(canon) + 1
    records = []
    while True:
        long_spans = [x for x, (first, last) in spans.items() if last >= first + 2]
        if not long_spans:
            break
        x = min(long_spans)
        first, last = spans[x]
        y = fresh
        fresh += 1
        drop, swap = ColorSet((x,)), ColorSet((y,))
        for k in range(first + 2, last + 1):
            lists[k] = (lists[k] - drop) | swap
        spans[x] = (first, first + 1)
        spans[y] = (first + 2, last)
        records.append(Replacement(x, y, first + 2, last))

    logging.debug(f"[Waterfall] transform: {len(records)} replacements on a path of length {path.n}")
    return path.with_lists(lists), TransformTrace(relabel, inverse, start, tuple(records))


def pullback_coloring(trace: TransformTrace, path: WeightedPath, coloring) -> dict:
    """
    Turn a coloring of the transformed list into a coloring of the original
    list by undoing the replacements in reverse order.
    """
    stages = trace.stages()
    final = WeightedPath(stages[-1], path.weights)
    col = [coloring[k] if isinstance(coloring[k], ColorSet) else ColorSet(coloring[k])
           for k in range(len(path))]
    report = verify_coloring(final.edges(), final.list_map(), final.weight_map(), dict(enumerate(col)))
    if not report:
        raise PreconditionError(f"pullback needs a valid coloring of the transformed list: {report.describe()}")

    for r in range(len(trace.records) - 1, -1, -1):
        rec = trace.records[r]
        after = stages[r + 1]
        i = rec.start - 2
        x, y = ColorSet((rec.old,)), ColorSet((rec.new,))
        if rec.old in col[i + 1] and rec.new in col[i + 2]:
            pool = after[i + 1] - (col[i] | col[i + 1] | col[i + 2])
            if pool:
                z = pool.lowest(1)
                col[i + 1] = (col[i + 1] - x) | z
            else:
                pool = (col[i] - col[i + 2]) & after[i + 1]
                if not pool:
                    raise PreconditionError(f"no swap color at index {i + 1}: the list is not good")
                z = pool.lowest(1)
                col[i + 1] = (col[i + 1] - x) | z
                col[i] = (col[i] - z) | x
        for k in range(rec.start, rec.end + 1):
            if rec.new in col[k]:
                col[k] = (col[k] - y) | x

    return {k: ColorSet(trace.inverse[c] for c in s) for k, s in enumerate(col)}


# ----------------------------------------------------------------------------
# Feasibility criteria
# ----------------------------------------------------------------------------
def waterfall_colorable(path: WeightedPath) -> bool:
    """For waterfall lists: colorable iff |A(i,j)| >= w(i) + ... + w(j) for all i <= j"""
    if not is_waterfall(path):
        raise PreconditionError("waterfall_colorable needs a waterfall list")
    for i in range(len(path)):
        bits, demand = 0, 0
        for j in range(i, len(path)):
            bits |= path.lists[j].bits
            demand += path.weights[j]
            if bits.bit_count() < demand:
                return False
    return True


def prefix_colorable(path: WeightedPath) -> bool:
    """Prefix form of the amplitude criterion for good waterfall lists"""
    if not is_waterfall(path):
        raise PreconditionError("prefix_colorable needs a waterfall list")
    if not is_good(path):
        raise PreconditionError("prefix_colorable needs |L(i)| >= w(i) + w(i+1) on the interior")
    if path.lists and len(path.lists[-1]) < path.weights[-1]:
        raise PreconditionError("prefix_colorable needs |L(n)| >= w(n)")
    bits, demand = 0, 0
    for colors, weight in zip(path.lists, path.weights):
        bits |= colors.bits
        demand += weight
        if bits.bit_count() < demand:
            return False
    return True


def hall_check_path(path: WeightedPath) -> bool:
    """
    Hall's condition on every subpath i..j: the sum over colors k of the
    independence number of the vertices holding k (ceil(run/2) per maximal
    run) must cover the total demand.
    """
    for i in range(len(path)):
        runs = {}
        alpha, demand = 0, 0
        for j in range(i, len(path)):
            current = {}
            for k in path.lists[j]:
                run = runs.get(k, 0)
                if run % 2 == 0:
                    alpha += 1
                current[k] = run + 1
            runs = current
            demand += path.weights[j]
            if alpha < demand:
                return False
    return True


def even_ceil(x) -> int:
    """Smallest even integer p with p >= x"""
    x = Fraction(x)
    if x < 0:
        raise PreconditionError(f"even_ceil needs x >= 0, got {x}")
    p = math.ceil(x)
    return p if p % 2 == 0 else p + 1


# ----------------------------------------------------------------------------
# Coloring waterfall lists
# ----------------------------------------------------------------------------
def _greedy_waterfall(path: WeightedPath):
    coloring = {}
    previous = EMPTY
    for i, colors in enumerate(path.lists):
        available = colors - previous
        upcoming = path.lists[i + 1] if i < path.n else EMPTY
        ordered = list(available - upcoming) + list(available & upcoming)
        if len(ordered) < path.weights[i]:
            return None
        previous = ColorSet(ordered[:path.weights[i]])
        coloring[i] = previous
    return coloring


def waterfall_color(path: WeightedPath, stats: Optional[WaterfallStats] = None) -> dict:
    """
    Color a feasible waterfall path left to right. At each vertex the colors
    absent from the next list go first, then shared ones, lowest id first.
    """
    if not is_waterfall(path):
        raise PreconditionError("waterfall_color needs a waterfall list")
    if not waterfall_colorable(path):
        raise PreconditionError("waterfall list is not colorable (amplitude criterion fails)")

    coloring = _greedy_waterfall(path)
    used_fallback = coloring is None
    if used_fallback:
        from oracle.lc_oracle import solve_path_exact
        logging.warning(f"[Waterfall] greedy failed on a feasible path of length {path.n}, using the oracle")
        coloring = solve_path_exact(path)
        if coloring is None:
            raise PreconditionError("oracle found no coloring although the amplitude criterion holds")
    if stats is not None:
        stats.record(used_fallback)
    return coloring


def _color_good_path(path: WeightedPath, stats: Optional[WaterfallStats] = None) -> dict:
    transformed, trace = waterfall_transform(path)
    return pullback_coloring(trace, path, waterfall_color(transformed, stats))


# ----------------------------------------------------------------------------
# Handle extension theorems
# ----------------------------------------------------------------------------
def _check_excess(params: ProblemParams):
    if params.e == 0:
        raise DegenerateExcessError("e = a - 2b is 0: Even(2b/e) is undefined")
    if params.e < 0:
        raise PreconditionError(f"a < 2b (a={params.a}, b={params.b})")


def _require(condition: bool, message: str):
    if not condition:
        raise PreconditionError(message)


def color_handle_long(path: WeightedPath, params: ProblemParams,
                      stats: Optional[WaterfallStats] = None) -> dict:
    """
    |L(0)| = |L(n)| = b, interior lists of size a = 2b + e and
    n >= Even(2b/e): the path is (L, b)-colorable. The end lists have exactly
    b colors, so c(0) = L(0) and c(n) = L(n).
    """
    _check_excess(params)
    a, b, e = params.a, params.b, params.e
    if b == 0:
        return {i: EMPTY for i in range(len(path))}
    n = path.n
    _require(all(w == b for w in path.weights), f"every demand must equal b = {b}")
    _require(n >= 1, "handle path needs at least one edge")
    _require(len(path.lists[0]) == b, f"|L(0)| = {len(path.lists[0])}, expected b = {b}")
    _require(len(path.lists[n]) == b, f"|L(n)| = {len(path.lists[n])}, expected b = {b}")
    for i in range(1, n):
        _require(len(path.lists[i]) == a, f"|L({i})| = {len(path.lists[i])}, expected a = {a}")
    _require(n >= even_ceil(Fraction(2 * b, e)), f"n = {n} < Even(2b/e) = {even_ceil(Fraction(2 * b, e))}")
    return _color_good_path(path, stats)


def color_handle_short(path: WeightedPath, params: ProblemParams,
                       stats: Optional[WaterfallStats] = None) -> dict:
    """
    |L(0)| = b, |L(i)| = a for 1 <= i <= n-2, |L(n-1)| = |L(n)| = b + e,
    |A(n-1, n)| >= 2b and n >= Even(2b/e).

    D is the set of the b - e lowest colors of L(n) \\ L(n-1) (empty when
    e >= b). The path with L'(n) = L(n) \\ D and w'(n) = b - |D| goes through
    the waterfall pipeline and c(n) = c'(n) ∪ D.
    """
    _check_excess(params)
    a, b, e = params.a, params.b, params.e
    if b == 0:
        return {i: EMPTY for i in range(len(path))}
    n = path.n
    _require(n >= 2, "short handle path needs at least two edges")
    _require(all(w == b for w in path.weights), f"every demand must equal b = {b}")
    _require(len(path.lists[0]) == b, f"|L(0)| = {len(path.lists[0])}, expected b = {b}")
    for i in range(1, n - 1):
        _require(len(path.lists[i]) == a, f"|L({i})| = {len(path.lists[i])}, expected a = {a}")
    _require(len(path.lists[n - 1]) == b + e, f"|L(n-1)| = {len(path.lists[n - 1])}, expected b+e = {b + e}")
    _require(len(path.lists[n]) == b + e, f"|L(n)| = {len(path.lists[n])}, expected b+e = {b + e}")
    _require(len(amplitude(path, n - 1, n)) >= 2 * b, f"|A(n-1,n)| < 2b = {2 * b}")
    _require(n >= even_ceil(Fraction(2 * b, e)), f"n = {n} < Even(2b/e) = {even_ceil(Fraction(2 * b, e))}")

    free = path.lists[n] - path.lists[n - 1]
    size = max(0, b - e)
    if len(free) < size:
        raise PreconditionError(f"|L(n) \\ L(n-1)| = {len(free)} < b - e = {size}: amplitude arithmetic broken")
    reserved = free.lowest(size)
    modified = path.replace(n, colors=path.lists[n] - reserved, weight=b - size)
    coloring = _color_good_path(modified, stats)
    coloring[n] = coloring[n] | reserved
    return coloring


def trim_end_lists(tail: ColorSet, end: ColorSet, params: ProblemParams,
                   keep_tail: Optional[ColorSet] = None, keep_end: Optional[ColorSet] = None):
    """
    Cut the two last lists of a short handle down to exactly b + e colors
    each, keeping |tail' ∪ end'| >= 2b. Keep sets go first; then tail takes
    colors outside end, end takes colors outside tail', lowest ids last.
    """
    b, size = params.b, params.b + params.e
    _require(len(tail) >= size and len(end) >= size, f"end lists need at least b+e = {size} colors")
    _require(len(tail | end) >= 2 * b, f"end lists span fewer than 2b = {2 * b} colors")
    keep_tail = keep_tail or EMPTY
    keep_end = keep_end or EMPTY
    _require(keep_tail <= tail and len(keep_tail) <= size, "keep_tail must be a small subset of tail")
    _require(keep_end <= end and len(keep_end) <= size, "keep_end must be a small subset of end")

    def fill(base, preferred, everything):
        extra = preferred - base
        base = base | extra.lowest(min(size - len(base), len(extra)))
        return base | (everything - base).lowest(size - len(base))

    new_tail = fill(keep_tail, tail - end, tail)
    new_end = fill(keep_end, end - new_tail, end)
    if len(new_tail | new_end) < 2 * b:
        raise PreconditionError("trimming lost the 2b amplitude")
    return new_tail, new_end

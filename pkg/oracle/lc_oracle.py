# ============================================================================
# LatticeChoose - Exact oracle for paths and cycles
# ============================================================================
"""
Dynamic programming over candidate color sets. The state at vertex i is the
w(i)-subset chosen from L(i); a transition is allowed iff consecutive sets are
disjoint. Candidates are enumerated in lexicographic order of color ids, so
the first coloring found is deterministic.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from config import ORACLE_TRANSITION_CAP
from shared.coloring import ColorSet
from shared.errors import OracleResourceError, PreconditionError
from waterfall.lc_waterfall import WeightedPath


@dataclass(frozen=True)
class SubsetState:
    """Chosen w(index)-subset of L(index) on a backtracked DP path"""
    index: int
    chosen: ColorSet


class _Budget:
    """Counts DP transition checks for one oracle call"""

    def __init__(self, cap: Optional[int]):
        self.cap = ORACLE_TRANSITION_CAP if cap is None else cap
        self.used = 0

    def spend(self, checks: int):
        self.used += checks
        if self.used > self.cap:
            raise OracleResourceError(f"oracle exceeded {self.cap} transition checks")

    def admit(self, count: int, index: int):
        if count > self.cap:
            raise OracleResourceError(f"{count} candidate sets at vertex {index} exceed the cap {self.cap}")


def _candidates(colors: ColorSet, weight: int, index: int, budget: _Budget) -> list:
    """Bitmasks of every weight-subset of colors, lexicographic order"""
    if weight > len(colors):
        return []
    budget.admit(math.comb(len(colors), weight), index)
    return [sum(1 << c for c in combo) for combo in combinations(list(colors), weight)]


def _fixed(path: WeightedPath, index: int, fixed: Optional[ColorSet], name: str):
    if fixed is None:
        return None
    fixed = fixed if isinstance(fixed, ColorSet) else ColorSet(fixed)
    if not fixed <= path.lists[index] or len(fixed) != path.weights[index]:
        raise PreconditionError(f"{name} must be a size-{path.weights[index]} subset of L({index})")
    return fixed.bits


def _layers(path: WeightedPath, start, end, budget: _Budget, keep_parents: bool):
    """
    Forward DP. Returns the list of layers (dict state -> parent state) or
    None as soon as a layer is empty.
    """
    n = path.n
    first = [start] if start is not None else _candidates(path.lists[0], path.weights[0], 0, budget)
    if n == 0 and end is not None:
        first = [s for s in first if s == end]
    reach = dict.fromkeys(first)
    if not reach:
        return None
    layers = [reach] if keep_parents else None
    for i in range(1, n + 1):
        if i == n and end is not None:
            current = [end]
        else:
            current = _candidates(path.lists[i], path.weights[i], i, budget)
        previous = list(reach)
        nxt, checks = {}, 0
        for state in current:
            for parent in previous:
                checks += 1
                if state & parent == 0:
                    nxt[state] = parent
                    break
        budget.spend(checks)
        if not nxt:
            return None
        reach = nxt
        if keep_parents:
            layers.append(reach)
    return layers if keep_parents else [reach]


def _backtrack(layers) -> list:
    state = next(iter(layers[-1]))
    chosen = [SubsetState(len(layers) - 1, ColorSet.from_bits(state))]
    for i in range(len(layers) - 1, 0, -1):
        state = layers[i][state]
        chosen.append(SubsetState(i - 1, ColorSet.from_bits(state)))
    chosen.reverse()
    return chosen


def _solve_path(path: WeightedPath, start, end, budget: _Budget) -> Optional[list]:
    layers = _layers(path, start, end, budget, keep_parents=True)
    return None if layers is None else _backtrack(layers)


def solve_path_exact(path: WeightedPath, fixed_start=None, fixed_end=None,
                     cap: Optional[int] = None) -> Optional[dict]:
    """Coloring {index: ColorSet} respecting the fixed endpoint sets, or None"""
    if len(path) == 0:
        return {}
    start = _fixed(path, 0, fixed_start, "fixed_start")
    end = _fixed(path, path.n, fixed_end, "fixed_end")
    budget = _Budget(cap)
    states = _solve_path(path, start, end, budget)
    if states is None:
        return None
    logging.debug(f"[Oracle] path of length {path.n} colored after {budget.used} checks")
    return {state.index: state.chosen for state in states}


def _cycle_cut(cycle: WeightedPath, anchor: ColorSet) -> WeightedPath:
    """Cycle minus vertex 0, with both new endpoints avoiding the anchor set"""
    lists = list(cycle.lists[1:])
    lists[0] = lists[0] - anchor
    lists[-1] = lists[-1] - anchor
    return WeightedPath(tuple(lists), cycle.weights[1:])


def _check_cycle(cycle: WeightedPath):
    if len(cycle) < 3:
        raise PreconditionError(f"cycle length must be at least 3, got {len(cycle)}")


def solve_cycle_exact(cycle: WeightedPath, cap: Optional[int] = None) -> Optional[dict]:
    """
    Cycle given in cyclic vertex order (vertex k adjacent to k±1 mod length).
    Tries the anchor sets of vertex 0 in order and solves the path that is
    left with its endpoints disjoint from the anchor. The cap covers all
    anchors together.
    """
    _check_cycle(cycle)
    budget = _Budget(cap)
    for bits in _candidates(cycle.lists[0], cycle.weights[0], 0, budget):
        anchor = ColorSet.from_bits(bits)
        states = _solve_path(_cycle_cut(cycle, anchor), None, None, budget)
        if states is not None:
            coloring = {0: anchor}
            coloring.update({state.index + 1: state.chosen for state in states})
            logging.debug(f"[Oracle] cycle of length {len(cycle)} colored after {budget.used} checks")
            return coloring
    return None


def enumerate_feasibility(path: WeightedPath, cycle: bool = False,
                          cap: Optional[int] = None) -> bool:
    """Feasibility verdict without materializing a coloring"""
    if len(path) == 0:
        return True
    budget = _Budget(cap)
    if not cycle:
        return _layers(path, None, None, budget, keep_parents=False) is not None
    _check_cycle(path)
    for bits in _candidates(path.lists[0], path.weights[0], 0, budget):
        cut = _cycle_cut(path, ColorSet.from_bits(bits))
        if _layers(cut, None, None, budget, keep_parents=False) is not None:
            return True
    return False


def is_similar(first: WeightedPath, second: WeightedPath, cap: Optional[int] = None) -> bool:
    """Two lists on the same weighted path are colorable or uncolorable together"""
    return enumerate_feasibility(first, cap=cap) == enumerate_feasibility(second, cap=cap)

# ============================================================================
# LatticeChoose - Color sets, lists, weights, colorings and the verifier
# ============================================================================
"""
Core value types shared by every solver package.

Colors are nonnegative integers. A ColorSet stores them as the bits of a
Python int, so union / intersection / difference are single int operations
and the cardinality is cached at construction. Lists L, weights w and
colorings c are plain mappings keyed by vertex (path indices or lattice
coordinates) whose insertion order is the vertex order.
"""

from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from collections.abc import Set as AbstractSet
from dataclasses import dataclass
from typing import Optional

from shared.errors import InputError

Vertex = Hashable


class ColorSet(AbstractSet):
    """Immutable set of nonnegative color ids backed by an int bitmask"""

    __slots__ = ("_bits", "_len")

    def __init__(self, colors: Iterable[int] = ()):
        bits = 0
        for color in colors:
            if color < 0:
                raise ValueError(f"color ids are nonnegative, got {color}")
            bits |= 1 << color
        self._bits = bits
        self._len = bits.bit_count()

    @classmethod
    def from_bits(cls, bits: int) -> "ColorSet":
        obj = cls.__new__(cls)
        obj._bits = bits
        obj._len = bits.bit_count()
        return obj

    @property
    def bits(self) -> int:
        return self._bits

    def __contains__(self, color) -> bool:
        return isinstance(color, int) and color >= 0 and (self._bits >> color) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        """Ascending color ids"""
        bits = self._bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self._len

    def __bool__(self) -> bool:
        return self._bits != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, ColorSet):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._bits)

    def __repr__(self) -> str:
        return f"ColorSet({{{', '.join(map(str, self))}}})"

    @staticmethod
    def _coerce(other) -> int:
        return other._bits if isinstance(other, ColorSet) else ColorSet(other)._bits

    def __or__(self, other) -> "ColorSet":
        return ColorSet.from_bits(self._bits | self._coerce(other))

    def __and__(self, other) -> "ColorSet":
        return ColorSet.from_bits(self._bits & self._coerce(other))

    def __sub__(self, other) -> "ColorSet":
        return ColorSet.from_bits(self._bits & ~self._coerce(other))

    __ror__ = __or__
    __rand__ = __and__

    def __le__(self, other) -> bool:
        return self._bits & ~self._coerce(other) == 0

    def __ge__(self, other) -> bool:
        return self._coerce(other) & ~self._bits == 0

    def isdisjoint(self, other) -> bool:
        return self._bits & self._coerce(other) == 0

    def issubset(self, other) -> bool:
        return self <= other

    def lowest(self, k: int) -> "ColorSet":
        """The k smallest colors of the set"""
        if k < 0 or k > self._len:
            raise ValueError(f"cannot take {k} colors from a set of {self._len}")
        bits, out = self._bits, 0
        for _ in range(k):
            low = bits & -bits
            out |= low
            bits ^= low
        return ColorSet.from_bits(out)

    def max_color(self) -> int:
        """Largest color id, -1 for the empty set"""
        return self._bits.bit_length() - 1

    def to_list(self) -> list:
        return list(self)


EMPTY = ColorSet()

# L, w and c are mappings keyed by vertex
ListAssignment = Mapping[Vertex, ColorSet]
WeightFn = Mapping[Vertex, int]
MultiColoring = Mapping[Vertex, ColorSet]


def as_color_sets(lists: Mapping[Vertex, Iterable[int]]) -> dict:
    """Normalize a mapping of iterables into a mapping of ColorSets"""
    return {v: s if isinstance(s, ColorSet) else ColorSet(s) for v, s in lists.items()}


def uniform_weights(vertices: Iterable[Vertex], demand: int) -> dict:
    """Constant weight function w(v) = demand"""
    return {v: demand for v in vertices}


def path_edges(count: int) -> list:
    """Edges (i, i+1) of the path on vertices 0..count-1"""
    return [(i, i + 1) for i in range(count - 1)]


# ----------------------------------------------------------------------------
# Problem parameters
# ----------------------------------------------------------------------------
@dataclass(frozen=True)
class ProblemParams:
    """List size a, demand b, excess e = a - 2b, optional multiplier m"""

    a: int
    b: int
    e: int
    m: Optional[int] = None

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise InputError(f"list size and demand must be nonnegative (a={self.a}, b={self.b})")
        if self.a != 2 * self.b + self.e:
            raise InputError(f"a must equal 2b + e (a={self.a}, b={self.b}, e={self.e})")

    @classmethod
    def from_ab(cls, a: int, b: int) -> "ProblemParams":
        m = a // 5 if a > 0 and a % 5 == 0 and b == 2 * (a // 5) else None
        return cls(a=a, b=b, e=a - 2 * b, m=m)

    @classmethod
    def from_m(cls, m: int) -> "ProblemParams":
        if m < 1:
            raise InputError(f"multiplier m must be >= 1, got {m}")
        return cls(a=5 * m, b=2 * m, e=m, m=m)

    @property
    def ratio_ok(self) -> bool:
        """a/b >= 5/2"""
        return 2 * self.a >= 5 * self.b


# ----------------------------------------------------------------------------
# Verification
# ----------------------------------------------------------------------------
@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    clause: Optional[str] = None      # "subset" | "size" | "disjoint"
    vertex: Optional[Vertex] = None
    edge: Optional[tuple] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "pass"
        where = f"vertex {self.vertex}" if self.edge is None else f"edge {self.edge}"
        return f"fail [{self.clause}] at {where}: {self.detail}"


def verify_coloring(edges: Iterable[tuple], lists: ListAssignment, weights: WeightFn,
                    coloring: MultiColoring) -> VerificationReport:
    """
    Check c(v) ⊆ L(v), |c(v)| = w(v) for every vertex and disjointness on
    every edge. Scans vertices in list order, then edges in the given order,
    and reports the first violation.
    """
    domain = set(lists)
    if set(weights) != domain:
        raise InputError("weight function and lists cover different vertices")
    if set(coloring) != domain:
        missing = [v for v in lists if v not in coloring]
        raise InputError(f"coloring is not total on the list domain (missing {missing[:5]})")
    edges = list(edges)
    for u, v in edges:
        if u not in domain or v not in domain:
            raise InputError(f"edge {(u, v)} references a vertex outside the list domain")

    for v, allowed in lists.items():
        chosen = coloring[v]
        if not chosen <= allowed:
            return VerificationReport(False, "subset", vertex=v,
                                      detail=f"colors {sorted(chosen - allowed)} not in L(v)")
        if len(chosen) != weights[v]:
            return VerificationReport(False, "size", vertex=v,
                                      detail=f"|c(v)| = {len(chosen)} but w(v) = {weights[v]}")
    for u, v in edges:
        shared = coloring[u] & coloring[v]
        if shared:
            return VerificationReport(False, "disjoint", edge=(u, v),
                                      detail=f"shared colors {sorted(shared)}")
    return VerificationReport(True)


def list_sizes_ok(lists: ListAssignment, a: int) -> bool:
    """True iff every list has exactly a colors"""
    return all(len(s) == a for s in lists.values())


def lists_from_sequence(lists: Sequence[Iterable[int]]) -> dict:
    """Index a sequence of color iterables as a path list assignment 0..n"""
    return {i: s if isinstance(s, ColorSet) else ColorSet(s) for i, s in enumerate(lists)}

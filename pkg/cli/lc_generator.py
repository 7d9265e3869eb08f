# ============================================================================
# LatticeChoose - Seeded instance generator
# ============================================================================
"""
Induced subgraphs of a width x height lattice window, plus seeded a-lists.
The "random" shape keeps vertices by density and destroys triangles by
deterministic deletion. The "honeycomb" shape keeps the vertices with
(x + 2y) mod 3 != 0 (every triangle has one vertex of each residue) and
punches a few random holes into it. The seed fully determines the output.
"""

import random
from dataclasses import dataclass
from typing import Optional

from config import (
    GEN_DENSITY, GEN_HEIGHT, GEN_HONEYCOMB_HOLES, GEN_LIST_STYLES, GEN_PALETTE_FACTOR, GEN_SHAPES,
    GEN_WIDTH,
)
from lattice.lc_lattice import Coord, LatticeGraph, is_triangle_free
from shared.coloring import ColorSet
from shared.errors import InputError, StructuralViolation


@dataclass(frozen=True)
class GeneratorConfig:
    width: int = GEN_WIDTH
    height: int = GEN_HEIGHT
    density: float = GEN_DENSITY
    seed: int = 0
    a: int = 5
    palette: Optional[int] = None
    style: str = "uniform"
    shape: str = "random"
    holes: float = GEN_HONEYCOMB_HOLES

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise InputError("window width and height must be positive")
        if not 0.0 <= self.density <= 1.0:
            raise InputError(f"density must lie in [0, 1], got {self.density}")
        if self.style not in GEN_LIST_STYLES:
            raise InputError(f"unknown list style {self.style!r}, expected one of {GEN_LIST_STYLES}")
        if self.shape not in GEN_SHAPES:
            raise InputError(f"unknown shape {self.shape!r}, expected one of {GEN_SHAPES}")
        if not 0.0 <= self.holes < 1.0:
            raise InputError(f"holes must lie in [0, 1), got {self.holes}")
        if self.palette_size < self.a:
            raise InputError(f"palette of {self.palette_size} colors cannot hold {self.a}-lists")

    @property
    def palette_size(self) -> int:
        return self.palette if self.palette is not None else GEN_PALETTE_FACTOR * self.a


def destroy_triangles(vertices) -> set:
    """
    Scan up and down triangles anchored at each vertex in row-major order and
    delete the lexicographically largest vertex of every triangle still present.
    """
    kept = {Coord(*v) for v in vertices}
    for x, y in sorted(kept, key=lambda v: (v.y, v.x)):
        anchor = Coord(x, y)
        for tri in ((anchor, Coord(x + 1, y), Coord(x, y + 1)),
                    (anchor, Coord(x + 1, y), Coord(x + 1, y - 1))):
            if all(v in kept for v in tri):
                kept.discard(max(tri))
    return kept


def _window(cfg: GeneratorConfig) -> list:
    return [Coord(x, y) for y in range(cfg.height) for x in range(cfg.width)]


def honeycomb_vertices(cfg: GeneratorConfig, rng: random.Random) -> list:
    """Honeycomb part of the window with a share cfg.holes of it deleted"""
    cells = [v for v in _window(cfg) if (v.x + 2 * v.y) % 3 != 0]
    return [v for v in cells if rng.random() >= cfg.holes]


def random_graph(cfg: GeneratorConfig, rng: random.Random) -> LatticeGraph:
    if cfg.shape == "honeycomb":
        chosen = honeycomb_vertices(cfg, rng)
    else:
        chosen = [v for v in _window(cfg) if rng.random() < cfg.density]
    graph = LatticeGraph(frozenset(destroy_triangles(chosen)))
    if not is_triangle_free(graph):
        raise StructuralViolation("triangle destruction left a triangle behind")
    return graph


def random_lists(graph: LatticeGraph, cfg: GeneratorConfig, rng: random.Random) -> dict:
    """Lists over colors 1..palette in one of the three styles"""
    a, size = cfg.a, cfg.palette_size
    colors = range(1, size + 1)
    lists = {}
    if cfg.style == "uniform":
        for v in graph:
            lists[v] = ColorSet(rng.sample(colors, a))
    elif cfg.style == "shifted":
        span = size - a + 1
        for v in graph:
            start = (2 * v.x + 3 * v.y + rng.randrange(2)) % span
            lists[v] = ColorSet(range(start + 1, start + a + 1))
    else:
        base = rng.sample(colors, a)
        for v in graph:
            row = list(base)
            for _ in range(rng.randint(0, 2)):
                spare = [c for c in colors if c not in row]
                if not spare:
                    break
                row[rng.randrange(a)] = rng.choice(spare)
            lists[v] = ColorSet(row)
    return lists


def generate_instance(cfg: GeneratorConfig):
    """(graph, lists) for the configuration"""
    rng = random.Random(cfg.seed)
    graph = random_graph(cfg, rng)
    return graph, random_lists(graph, cfg, rng)

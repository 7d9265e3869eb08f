# ============================================================================
# LatticeChoose - Self-test suite
# ============================================================================
"""
Property checks with the exact oracle as referee, sized by the scales in
config.SELFTEST_SCALES. Each check returns how many cases ran and how many
failed; run_selftest collects them into a pass/fail matrix.
"""

import logging
import random
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from config import SELFTEST_SCALES, SOLVE_M1_MEDIAN_SECONDS, SOLVE_M2_MAX_SECONDS
from choosability.lc_solver import SolveInstance, solve
from cli.lc_generator import GeneratorConfig, generate_instance, random_graph
from lattice.lc_lattice import (
    NodeKind, cutting_handle, cutting_node, girth_at_least_6, mirror, nodes, short_handle_context,
)
from oracle.lc_oracle import enumerate_feasibility, solve_path_exact
from shared.coloring import ColorSet, ProblemParams, verify_coloring
from shared.errors import LatticeChooseError, RatioGateError, StructuralViolation
from waterfall.lc_waterfall import (
    WaterfallStats, WeightedPath, color_handle_long, color_handle_short, even_ceil,
    hall_check_path, is_waterfall, prefix_colorable, pullback_coloring, waterfall_colorable,
    waterfall_transform,
)


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: int = 0
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, note: str):
        self.failures += 1
        if len(self.notes) < 3:
            self.notes.append(note)

    def row(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  {'; '.join(self.notes)}" if self.notes else ""
        return f"[{status}] {self.name:<24} cases={self.cases:<7} failures={self.failures:<4} {self.seconds:7.2f}s{extra}"


# ----------------------------------------------------------------------------
# Instance builders
# ----------------------------------------------------------------------------
def exhaustive_paths(max_vertices: int, palette: int, max_weight: int):
    """Every path with up to max_vertices vertices, lists over colors 1..palette"""
    subsets = [ColorSet(c + 1 for c in range(palette) if mask >> c & 1) for mask in range(1 << palette)]
    for count in range(1, max_vertices + 1):
        for weights in product(range(max_weight + 1), repeat=count):
            for lists in product(subsets, repeat=count):
                yield WeightedPath(lists, weights)


def random_path(rng: random.Random, max_n: int = 8, palette: int = 8, max_weight: int = 2,
                good: bool = False) -> WeightedPath:
    n = rng.randint(0, max_n)
    weights = [rng.randint(0, max_weight) for _ in range(n + 1)]
    lists = []
    for i in range(n + 1):
        low = weights[i] + weights[i + 1] if good and 0 < i < n else 0
        size = min(palette, rng.randint(low, low + 2))
        lists.append(rng.sample(range(1, palette + 1), size))
    return WeightedPath.of(lists, weights)


def _sample(rng: random.Random, pool, size: int) -> ColorSet:
    return ColorSet(rng.sample(sorted(pool), size))


def random_long_handle(rng: random.Random, b: int, e: int, n: int) -> WeightedPath:
    a = 2 * b + e
    colors = range(1, a + b + 3)
    lists = [_sample(rng, colors, b)] + [_sample(rng, colors, a) for _ in range(n - 1)] + [_sample(rng, colors, b)]
    return WeightedPath.of(lists, b)


def random_short_handle(rng: random.Random, b: int, e: int, n: int) -> WeightedPath:
    a = 2 * b + e
    colors = range(1, a + b + 3)
    lists = [_sample(rng, colors, b)] + [_sample(rng, colors, a) for _ in range(n - 2)]
    while True:
        tail, end = _sample(rng, colors, b + e), _sample(rng, colors, b + e)
        if len(tail | end) >= 2 * b:
            return WeightedPath.of(lists + [tail, end], b)


def lattice_corpus(rng: random.Random, count: int):
    for k in range(count):
        cfg = GeneratorConfig(width=rng.randint(3, 8), height=rng.randint(3, 8),
                              density=rng.uniform(0.5, 0.95), seed=rng.randrange(1 << 30),
                              shape=("random", "honeycomb")[k % 2])
        yield random_graph(cfg, random.Random(cfg.seed))


def _valid(path: WeightedPath, coloring) -> bool:
    return bool(verify_coloring(path.edges(), path.list_map(), path.weight_map(), coloring))


# ----------------------------------------------------------------------------
# Checks
# ----------------------------------------------------------------------------
def check_waterfall_criterion(scale, rng, result, stats):
    for path in exhaustive_paths(scale["exhaustive_vertices"], scale["exhaustive_palette"],
                                 scale["exhaustive_weight"]):
        if not is_waterfall(path):
            continue
        result.cases += 1
        feasible = enumerate_feasibility(path)
        if waterfall_colorable(path) != feasible:
            result.fail(f"criterion disagrees on {path}")


def check_hall(scale, rng, result, stats):
    for path in exhaustive_paths(scale["exhaustive_vertices"], scale["exhaustive_palette"],
                                 scale["exhaustive_weight"]):
        result.cases += 1
        if hall_check_path(path) != enumerate_feasibility(path):
            result.fail(f"hall disagrees on {path}")
    for _ in range(scale["random_paths"]):
        path = random_path(rng)
        result.cases += 1
        if enumerate_feasibility(path) and not hall_check_path(path):
            result.fail(f"hall not necessary on {path}")


def check_transform(scale, rng, result, stats):
    for _ in range(scale["random_paths"]):
        path = random_path(rng, max_n=8, palette=12, good=True)
        transformed, trace = waterfall_transform(path)
        result.cases += 1
        if not is_waterfall(transformed) or [len(s) for s in transformed.lists] != [len(s) for s in path.lists]:
            result.fail("transform output not waterfall or sizes changed")
            continue
        if trace.replay(path.lists) != transformed.lists:
            result.fail("trace replay differs")
            continue
        feasible = enumerate_feasibility(path)
        if feasible != enumerate_feasibility(transformed):
            result.fail(f"similarity broken on {path}")
            continue
        if feasible:
            pulled = pullback_coloring(trace, path, solve_path_exact(transformed))
            if not _valid(path, pulled):
                result.fail(f"pullback invalid on {path}")


def _transformed_paths(rng, count, max_n, palette):
    """Waterfall outputs of random good paths"""
    for _ in range(count):
        path = random_path(rng, max_n=max_n, palette=palette, good=True)
        yield waterfall_transform(path)[0]


def check_waterfall_random(scale, rng, result, stats):
    for path in _transformed_paths(rng, scale["random_paths"], max_n=4, palette=7):
        result.cases += 1
        if waterfall_colorable(path) != enumerate_feasibility(path):
            result.fail(f"criterion disagrees on {path}")


def check_prefix_criterion(scale, rng, result, stats):
    for path in _transformed_paths(rng, scale["random_paths"], max_n=8, palette=12):
        if len(path.lists[-1]) < path.weights[-1]:
            continue
        result.cases += 1
        if prefix_colorable(path) != waterfall_colorable(path):
            result.fail(f"prefix criterion disagrees on {path}")


def _handle_grid():
    for b in (1, 2, 3, 4):
        for e in (1, 2):
            start = even_ceil(Fraction(2 * b, e))
            for n in range(start, start + 4):
                yield b, e, n


def check_long_handles(scale, rng, result, stats):
    for b, e, n in _handle_grid():
        params = ProblemParams(a=2 * b + e, b=b, e=e)
        for _ in range(scale["handle_cases"]):
            path = random_long_handle(rng, b, e, n)
            result.cases += 1
            try:
                coloring = color_handle_long(path, params, stats)
            except LatticeChooseError as exc:
                result.fail(f"b={b} e={e} n={n}: {exc}")
                continue
            if not _valid(path, coloring) or coloring[0] != path.lists[0] or coloring[n] != path.lists[n]:
                result.fail(f"b={b} e={e} n={n}: invalid coloring")


def check_short_handles(scale, rng, result, stats):
    for b, e, n in _handle_grid():
        params = ProblemParams(a=2 * b + e, b=b, e=e)
        for _ in range(scale["handle_cases"]):
            path = random_short_handle(rng, b, e, n)
            result.cases += 1
            try:
                coloring = color_handle_short(path, params, stats)
            except LatticeChooseError as exc:
                result.fail(f"b={b} e={e} n={n}: {exc}")
                continue
            if not _valid(path, coloring):
                result.fail(f"b={b} e={e} n={n}: invalid coloring")


def check_claim(scale, rng, result, stats):
    for graph in lattice_corpus(rng, scale["lattice_graphs"]):
        if not nodes(graph):
            continue
        result.cases += 1
        host = graph if cutting_node(graph) is not None else mirror(graph)[0]
        if cutting_node(host) is None:
            result.fail("no cutting node even after mirroring")
            continue
        handle = cutting_handle(host)
        try:
            if handle is not None and handle.length <= 3:
                short_handle_context(host, handle)
        except StructuralViolation as exc:
            result.fail(str(exc))


def check_mirror(scale, rng, result, stats):
    for graph in lattice_corpus(rng, scale["lattice_graphs"]):
        result.cases += 1
        image, mapping = mirror(graph)
        adjacency = {frozenset((mapping[u], mapping[v])) for u, v in graph.edges()}
        if adjacency != {frozenset(edge) for edge in image.edges()}:
            result.fail("mirror does not preserve adjacency")
            continue
        if mirror(image)[0].vertices != graph.vertices:
            result.fail("mirror is not an involution")
            continue
        before, after = list(nodes(graph).values()), list(nodes(image).values())
        if (before.count(NodeKind.LEFT_NODE), before.count(NodeKind.RIGHT_NODE)) != \
                (after.count(NodeKind.RIGHT_NODE), after.count(NodeKind.LEFT_NODE)):
            result.fail("node counts do not swap")


# random-shape window, honeycomb window per family
M1_WINDOWS = {"random": (8, 8), "honeycomb": (10, 10)}
M2_WINDOWS = {"random": (5, 4), "honeycomb": (7, 7)}
RATIO_WINDOWS = {"random": (5, 5), "honeycomb": (7, 7)}


def _solve_cases(rng, count, params, windows, result, stats, timings=None):
    """Alternates random and honeycomb shapes, cycling the list styles"""
    for k in range(count):
        shape = ("random", "honeycomb")[k % 2]
        width, height = windows[shape]
        cfg = GeneratorConfig(width=width, height=height, density=rng.uniform(0.5, 0.9),
                              seed=rng.randrange(1 << 30), a=params.a, shape=shape,
                              style=("uniform", "shifted", "near_identical")[k % 3])
        graph, lists = generate_instance(cfg)
        result.cases += 1
        started = time.perf_counter()
        try:
            solve(SolveInstance(graph, lists, params), stats)
        except LatticeChooseError as exc:
            result.fail(f"{shape} seed {cfg.seed}: {exc}")
        if timings is not None:
            timings.append(time.perf_counter() - started)


def judge_timing(result: CheckResult, label: str, seconds: float, limit: float):
    """A timing above its target counts as a failure"""
    if seconds > limit:
        result.fail(f"{label} {1000 * seconds:.1f} ms over the {1000 * limit:.0f} ms target")
    else:
        result.notes.append(f"{label} {1000 * seconds:.1f} ms")


def check_solve_m1(scale, rng, result, stats):
    timings = []
    _solve_cases(rng, scale["solve_m1"], ProblemParams.from_m(1), M1_WINDOWS, result, stats, timings)
    if timings:
        judge_timing(result, "median", statistics.median(timings), SOLVE_M1_MEDIAN_SECONDS)


def check_solve_m2(scale, rng, result, stats):
    timings = []
    _solve_cases(rng, scale["solve_m2"], ProblemParams.from_m(2), M2_WINDOWS, result, stats, timings)
    if timings:
        judge_timing(result, "slowest", max(timings), SOLVE_M2_MAX_SECONDS)


def check_generalization(scale, rng, result, stats):
    for a, b in ((5, 2), (8, 3), (11, 4), (13, 5)):
        _solve_cases(rng, scale["ratio_cases"], ProblemParams.from_ab(a, b), RATIO_WINDOWS, result, stats)
    graph, lists = generate_instance(GeneratorConfig(width=4, height=4, seed=rng.randrange(1 << 30), a=9))
    result.cases += 1
    try:
        solve(SolveInstance(graph, lists, ProblemParams.from_ab(9, 4)))
        result.fail("(9,4) was not rejected")
    except RatioGateError:
        pass


def check_girth(scale, rng, result, stats):
    for graph in lattice_corpus(rng, scale["lattice_graphs"]):
        result.cases += 1
        if not girth_at_least_6(graph):
            result.fail(f"short cycle in {sorted(graph.vertices)[:6]}...")


CHECKS = (
    ("waterfall_criterion", check_waterfall_criterion),
    ("hall_paths", check_hall),
    ("transform_similarity", check_transform),
    ("waterfall_random", check_waterfall_random),
    ("prefix_criterion", check_prefix_criterion),
    ("long_handles", check_long_handles),
    ("short_handles", check_short_handles),
    ("claim", check_claim),
    ("mirror", check_mirror),
    ("solve_m1", check_solve_m1),
    ("solve_m2", check_solve_m2),
    ("generalization", check_generalization),
    ("girth", check_girth),
)


def run_selftest(scale: str = "smoke", seed: int = 0, only=None):
    """Run the checks at the given scale; returns (results, waterfall stats)"""
    budget = SELFTEST_SCALES[scale]
    stats = WaterfallStats()
    results = []
    for name, check in CHECKS:
        if only and name not in only:
            continue
        result = CheckResult(name)
        rng = random.Random(f"{seed}:{name}")
        started = time.perf_counter()
        try:
            check(budget, rng, result, stats)
        except LatticeChooseError as exc:
            result.fail(f"aborted: {exc}")
        result.seconds = time.perf_counter() - started
        logging.info(f"[Selftest] {name}: {result.cases} cases, {result.failures} failures")
        results.append(result)
    return results, stats

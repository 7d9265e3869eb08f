import random
from fractions import Fraction

import pytest

from cli.lc_selftest import random_long_handle, random_path, random_short_handle
from oracle.lc_oracle import enumerate_feasibility, solve_path_exact
from shared.coloring import EMPTY, ColorSet, ProblemParams, verify_coloring
from shared.errors import DegenerateExcessError, PreconditionError
from waterfall.lc_waterfall import (
    Replacement, TransformTrace, WaterfallStats, WeightedPath, amplitude, color_handle_long,
    color_handle_short, color_spans, even_ceil, hall_check_path, is_good, is_waterfall,
    prefix_colorable, pullback_coloring, trim_end_lists, waterfall_color, waterfall_colorable,
    waterfall_transform,
)

SCATTERED = [{1, 2, 3, 4, 6}, {2, 3, 4, 5}, {1, 3, 5, 6, 7}, {1, 3, 4}, {1, 4, 5, 6}]
CASCADE = [{1, 2, 3, 4, 5}, {3, 4, 5, 6}, {6, 7, 8, 9}, {9, 10, 11}, {10, 11, 12, 13}]
TRIANGLE_LISTS = [{1, 2}, {1, 2, 3}, {1, 3}]


def sets(*rows):
    return tuple(ColorSet(r) for r in rows)


def colored(coloring):
    return tuple(coloring[i] for i in range(len(coloring)))


def valid(path, coloring):
    return verify_coloring(path.edges(), path.list_map(), path.weight_map(), coloring).ok


# ----------------------------------------------------------------------------
# Predicates
# ----------------------------------------------------------------------------
def test_is_waterfall():
    assert not is_waterfall(WeightedPath.of(SCATTERED, 1))
    assert is_waterfall(WeightedPath.of(CASCADE, 1))
    assert is_waterfall(WeightedPath.of([{1, 2, 3}], 2))


def test_amplitude():
    path = WeightedPath.of(CASCADE, 1)
    assert amplitude(path, 0, 1) == ColorSet(range(1, 7))
    assert amplitude(path, 3, 4) == ColorSet(range(9, 14))
    assert amplitude(path, 2, 2) == path.lists[2]
    with pytest.raises(IndexError):
        amplitude(path, 3, 5)


def test_is_good():
    assert is_good(WeightedPath.of([range(5)] * 5, 2))
    assert not is_good(WeightedPath.of([{1, 2, 3}, {1, 2, 3}, {1, 2, 3}], 2))
    assert is_good(WeightedPath.of(TRIANGLE_LISTS, 1))


def test_weighted_path_rejects_misaligned_weights():
    with pytest.raises(PreconditionError):
        WeightedPath(sets({1}, {2}), (1,))
    with pytest.raises(PreconditionError):
        WeightedPath.of([{1}], -1)


# ----------------------------------------------------------------------------
# Transform and pullback
# ----------------------------------------------------------------------------
def test_transform_small_example():
    path = WeightedPath.of(TRIANGLE_LISTS, 1)
    transformed, trace = waterfall_transform(path)
    assert transformed.lists == sets({1, 2}, {1, 2, 3}, {3, 4})
    assert trace.records == (Replacement(old=2, new=4, start=2, end=2),)
    assert trace.replay(path.lists) == transformed.lists
    assert is_waterfall(transformed)


def test_transform_keeps_waterfall_input():
    path = WeightedPath.of(CASCADE, 1)
    transformed, trace = waterfall_transform(path)
    assert transformed is path
    assert trace.records == ()
    assert trace.is_identity


def test_transform_scattered_lists_is_similar():
    path = WeightedPath.of(SCATTERED, 1)
    transformed, _ = waterfall_transform(path)
    assert [len(s) for s in transformed.lists] == [5, 4, 5, 3, 4]
    assert is_waterfall(transformed)
    assert enumerate_feasibility(transformed) == enumerate_feasibility(path)


def test_transform_normalizes_gapped_colors():
    path = WeightedPath.of([{1, 2}, {3, 4}, {1, 5}], 1)
    transformed, trace = waterfall_transform(path)
    spans = color_spans(transformed)
    assert all(span.last - span.first <= 1 for span in spans.values())
    assert len(trace.inverse) == 6


def test_transform_rejects_bad_list():
    with pytest.raises(PreconditionError):
        waterfall_transform(WeightedPath.of([{1, 2}, {1, 2, 3}, {1, 2}], 2))


def _manual_trace():
    start = sets(*TRIANGLE_LISTS)
    relabel = tuple({x: x for x in s} for s in start)
    return TransformTrace(relabel, {1: 1, 2: 2, 3: 3}, start, (Replacement(1, 4, 2, 2),))


def test_pullback_substitutes_free_color():
    path = WeightedPath.of(TRIANGLE_LISTS, 1)
    result = pullback_coloring(_manual_trace(), path, dict(enumerate(sets({2}, {1}, {4}))))
    assert colored(result) == sets({2}, {3}, {1})


def test_pullback_renames_when_old_color_unused():
    path = WeightedPath.of(TRIANGLE_LISTS, 1)
    result = pullback_coloring(_manual_trace(), path, dict(enumerate(sets({2}, {3}, {4}))))
    assert colored(result) == sets({2}, {3}, {1})


def test_pullback_identity_trace():
    path = WeightedPath.of(CASCADE, 1)
    _, trace = waterfall_transform(path)
    coloring = dict(enumerate(sets({1}, {3}, {6}, {9}, {10})))
    assert pullback_coloring(trace, path, coloring) == coloring


def test_pullback_rejects_invalid_coloring():
    path = WeightedPath.of(TRIANGLE_LISTS, 1)
    with pytest.raises(PreconditionError):
        pullback_coloring(_manual_trace(), path, dict(enumerate(sets({1}, {1}, {4}))))


def test_pipeline_on_small_example():
    path = WeightedPath.of(TRIANGLE_LISTS, 1)
    transformed, trace = waterfall_transform(path)
    result = pullback_coloring(trace, path, waterfall_color(transformed))
    assert colored(result) == sets({2}, {1}, {3})
    assert valid(path, result)


def test_transform_similarity_on_random_good_lists():
    rng = random.Random(3)
    for _ in range(150):
        path = random_path(rng, max_n=6, palette=9, good=True)
        transformed, trace = waterfall_transform(path)
        assert is_waterfall(transformed)
        assert [len(s) for s in transformed.lists] == [len(s) for s in path.lists]
        feasible = enumerate_feasibility(path)
        assert feasible == enumerate_feasibility(transformed)
        if feasible:
            assert valid(path, pullback_coloring(trace, path, solve_path_exact(transformed)))


# ----------------------------------------------------------------------------
# Criteria
# ----------------------------------------------------------------------------
def test_waterfall_colorable():
    assert waterfall_colorable(WeightedPath.of([{1, 2}, {2, 3, 4}, {4, 5}], 1))
    assert not waterfall_colorable(WeightedPath.of([{1}, {1, 2}, {2}], 1))
    assert waterfall_colorable(WeightedPath.of(CASCADE, 0))
    with pytest.raises(PreconditionError):
        waterfall_colorable(WeightedPath.of(SCATTERED, 1))


def test_prefix_colorable():
    path = WeightedPath.of([{1}, {1, 2}, {2, 3}], 1)
    assert prefix_colorable(path)
    assert prefix_colorable(WeightedPath.of(CASCADE, 1)) == waterfall_colorable(WeightedPath.of(CASCADE, 1))
    with pytest.raises(PreconditionError):
        prefix_colorable(WeightedPath.of(CASCADE, 2))
    assert prefix_colorable(WeightedPath.of(CASCADE, 0))
    with pytest.raises(PreconditionError):
        prefix_colorable(WeightedPath.of([{1}, {1}, {2}], 1))


def test_prefix_criterion_matches_full_criterion():
    rng = random.Random(17)
    compared = 0
    for _ in range(400):
        path, _ = waterfall_transform(random_path(rng, max_n=7, palette=10, good=True))
        if len(path.lists[-1]) < path.weights[-1]:
            continue
        compared += 1
        assert prefix_colorable(path) == waterfall_colorable(path)
        assert waterfall_colorable(path) == enumerate_feasibility(path)
    assert compared > 100


def test_waterfall_criterion_on_random_transformed_lists():
    rng = random.Random(19)
    for _ in range(300):
        path, _ = waterfall_transform(random_path(rng, max_n=4, palette=7, good=True))
        assert waterfall_colorable(path) == enumerate_feasibility(path)


def test_hall_check_path():
    assert not hall_check_path(WeightedPath.of([{1}, {1}, {1}], 1))
    assert hall_check_path(WeightedPath.of([{1}, {2}, {1}], 1))
    assert hall_check_path(WeightedPath.of(SCATTERED, 0))


def test_hall_matches_oracle_on_random_paths():
    rng = random.Random(11)
    for _ in range(300):
        path = random_path(rng, max_n=5, palette=5)
        assert hall_check_path(path) == enumerate_feasibility(path)


@pytest.mark.parametrize("x,expected", [(4, 4), (2, 2), (Fraction(8, 3), 4), (0, 0), (Fraction(1, 3), 2), (3, 4)])
def test_even_ceil(x, expected):
    assert even_ceil(x) == expected


def test_even_ceil_rejects_negative():
    with pytest.raises(PreconditionError):
        even_ceil(-1)


# ----------------------------------------------------------------------------
# Greedy coloring
# ----------------------------------------------------------------------------
def test_waterfall_color_prefers_expiring_colors():
    path = WeightedPath.of([{1, 2}, {2, 3, 4}, {4, 5}], 1)
    assert colored(waterfall_color(path)) == sets({1}, {2}, {4})


def test_waterfall_color_single_vertex():
    assert waterfall_color(WeightedPath.of([{1, 2, 3}], 2)) == {0: ColorSet({1, 2})}


def test_waterfall_color_cascade():
    path = WeightedPath.of(CASCADE, 2)
    stats = WaterfallStats()
    coloring = waterfall_color(path, stats)
    assert colored(coloring) == sets({1, 2}, {3, 4}, {6, 7}, {9, 10}, {11, 12})
    assert valid(path, coloring)
    assert (stats.greedy, stats.fallback) == (1, 0)


def test_waterfall_color_rejects_bad_input():
    with pytest.raises(PreconditionError):
        waterfall_color(WeightedPath.of(SCATTERED, 1))
    with pytest.raises(PreconditionError):
        waterfall_color(WeightedPath.of([{1}, {1, 2}, {2}], 1))


# ----------------------------------------------------------------------------
# Handle theorems
# ----------------------------------------------------------------------------
def test_long_handle_unit_demand():
    path = WeightedPath.of([{1}, {1, 2, 3}, {2}], 1)
    assert colored(color_handle_long(path, ProblemParams(a=3, b=1, e=1))) == sets({1}, {3}, {2})


def test_long_handle_keeps_endpoints():
    path = WeightedPath.of([{1, 2}, range(1, 6), range(3, 8), range(6, 11), {9, 10}], 2)
    coloring = color_handle_long(path, ProblemParams.from_m(1))
    assert valid(path, coloring)
    assert coloring[0] == ColorSet({1, 2}) and coloring[4] == ColorSet({9, 10})


def test_long_handle_zero_demand():
    path = WeightedPath.of([set(), {1}, set()], 0)
    assert color_handle_long(path, ProblemParams(a=1, b=0, e=1)) == {0: EMPTY, 1: EMPTY, 2: EMPTY}


def test_long_handle_preconditions():
    with pytest.raises(DegenerateExcessError):
        color_handle_long(WeightedPath.of([{1}, {1, 2}, {2}], 1), ProblemParams(a=2, b=1, e=0))
    with pytest.raises(PreconditionError):
        color_handle_long(WeightedPath.of([{1, 2}, range(1, 6), {3, 4}], 2), ProblemParams.from_m(1))
    with pytest.raises(PreconditionError):
        color_handle_long(WeightedPath.of([{1}, {1, 2}, {2}], 1), ProblemParams(a=3, b=1, e=1))


def test_short_handle_reserves_colors_at_the_end():
    path = WeightedPath.of([{1, 2}, range(1, 6), range(3, 8), {6, 7, 8}, {8, 9, 10}], 2)
    coloring = color_handle_short(path, ProblemParams.from_m(1))
    assert valid(path, coloring)
    assert 9 in coloring[4]


def test_short_handle_with_empty_reserve():
    path = WeightedPath.of([{1}, {1, 2}, {2, 3}], 1)
    coloring = color_handle_short(path, ProblemParams(a=3, b=1, e=1))
    assert colored(coloring) == sets({1}, {2}, {3})


def test_short_handle_amplitude_gate():
    path = WeightedPath.of([{1, 2}, range(1, 6), range(3, 8), {6, 7, 8}, {6, 7, 8}], 2)
    with pytest.raises(PreconditionError):
        color_handle_short(path, ProblemParams.from_m(1))


@pytest.mark.parametrize("b,e", [(1, 1), (2, 1), (2, 2), (3, 2), (4, 1)])
def test_handle_theorems_on_random_instances(b, e):
    rng = random.Random(b * 10 + e)
    params = ProblemParams(a=2 * b + e, b=b, e=e)
    start = even_ceil(Fraction(2 * b, e))
    for n in range(start, start + 3):
        for _ in range(10):
            path = random_long_handle(rng, b, e, n)
            coloring = color_handle_long(path, params)
            assert valid(path, coloring)
            assert coloring[0] == path.lists[0] and coloring[n] == path.lists[n]
            path = random_short_handle(rng, b, e, n)
            assert valid(path, color_handle_short(path, params))


def test_trim_end_lists_default_rule():
    tail, end = trim_end_lists(ColorSet({1, 2, 3, 4}), ColorSet({3, 4, 5, 6}), ProblemParams.from_m(1))
    assert (tail, end) == (ColorSet({1, 2, 3}), ColorSet({4, 5, 6}))


def test_trim_end_lists_keeps_given_colors():
    tail, end = trim_end_lists(ColorSet({1, 2, 3, 4}), ColorSet({3, 4, 5, 6}), ProblemParams.from_m(1),
                               keep_tail=ColorSet({3, 4}), keep_end=ColorSet({5, 6}))
    assert (tail, end) == (ColorSet({1, 3, 4}), ColorSet({3, 5, 6}))


def test_trim_end_lists_rejects_short_lists():
    with pytest.raises(PreconditionError):
        trim_end_lists(ColorSet({1, 2}), ColorSet({3, 4, 5}), ProblemParams.from_m(1))
    with pytest.raises(PreconditionError):
        trim_end_lists(ColorSet({1, 2, 3}), ColorSet({1, 2, 3}), ProblemParams.from_m(1))

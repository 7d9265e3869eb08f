import random

import pytest

from cli.lc_selftest import random_path
from oracle.lc_oracle import enumerate_feasibility, is_similar, solve_cycle_exact, solve_path_exact
from shared.coloring import ColorSet, verify_coloring
from shared.errors import OracleResourceError, PreconditionError
from waterfall.lc_waterfall import WeightedPath, hall_check_path


def cycle_valid(cycle, coloring):
    count = len(cycle)
    edges = [(i, (i + 1) % count) for i in range(count)]
    return verify_coloring(edges, cycle.list_map(), cycle.weight_map(), coloring).ok


def test_path_infeasible():
    path = WeightedPath.of([{1}, {1, 2}, {2}], 1)
    assert solve_path_exact(path) is None
    assert not enumerate_feasibility(path)


def test_path_first_coloring_is_lexicographic():
    path = WeightedPath.of([{1, 2}, {1, 2, 3}, {1, 3}], 1)
    coloring = solve_path_exact(path)
    assert [coloring[i] for i in range(3)] == [ColorSet({1}), ColorSet({2}), ColorSet({1})]


def test_fixed_start_on_single_vertex():
    path = WeightedPath.of([{1, 2, 3}], 2)
    assert solve_path_exact(path, fixed_start={1, 2}) == {0: ColorSet({1, 2})}


def test_both_endpoints_fixed():
    path = WeightedPath.of([{1, 2, 3}, {1, 2, 3, 4}, {2, 3, 4}], 1)
    coloring = solve_path_exact(path, fixed_start={3}, fixed_end={3})
    assert coloring[0] == ColorSet({3}) and coloring[2] == ColorSet({3})
    assert verify_coloring(path.edges(), path.list_map(), path.weight_map(), coloring).ok


def test_fixed_set_must_fit_the_list():
    path = WeightedPath.of([{1, 2}, {3}], 1)
    with pytest.raises(PreconditionError):
        solve_path_exact(path, fixed_start={3})
    with pytest.raises(PreconditionError):
        solve_path_exact(path, fixed_start={1, 2})


def test_even_cycle_alternates():
    cycle = WeightedPath.of([{1, 2}] * 4, 1)
    coloring = solve_cycle_exact(cycle)
    assert [coloring[i] for i in range(4)] == [ColorSet({1}), ColorSet({2}), ColorSet({1}), ColorSet({2})]


def test_odd_cycle_with_five_lists():
    cycle = WeightedPath.of([range(1, 6)] * 5, 2)
    coloring = solve_cycle_exact(cycle)
    assert coloring is not None and cycle_valid(cycle, coloring)
    assert enumerate_feasibility(cycle, cycle=True)


def test_triangle_with_two_colors_is_infeasible():
    cycle = WeightedPath.of([{1, 2}] * 3, 1)
    assert solve_cycle_exact(cycle) is None
    assert not enumerate_feasibility(cycle, cycle=True)


def test_cycle_needs_three_vertices():
    with pytest.raises(PreconditionError):
        solve_cycle_exact(WeightedPath.of([{1}, {2}], 1))


def test_empty_and_constant_paths():
    assert enumerate_feasibility(WeightedPath.of([], 1))
    assert solve_path_exact(WeightedPath.of([], 1)) == {}
    assert not enumerate_feasibility(WeightedPath.of([{1}, {1}, {1}], 1))


def test_resource_cap_fails_loudly():
    path = WeightedPath.of([range(1, 7)] * 3, 3)
    with pytest.raises(OracleResourceError):
        solve_path_exact(path, cap=5)
    with pytest.raises(OracleResourceError):
        enumerate_feasibility(path, cap=100)


def test_resource_cap_covers_every_cycle_anchor():
    # nine checks per anchor, each anchor alone stays under the cap
    cycle = WeightedPath.of([range(1, 6)] * 3, 2)
    assert solve_cycle_exact(cycle) is None
    with pytest.raises(OracleResourceError):
        solve_cycle_exact(cycle, cap=20)
    with pytest.raises(OracleResourceError):
        enumerate_feasibility(cycle, cycle=True, cap=20)


def test_cycle_verdict_is_rotation_invariant():
    rng = random.Random(5)
    for _ in range(60):
        count = rng.randint(3, 6)
        lists = [rng.sample(range(1, 6), rng.randint(1, 4)) for _ in range(count)]
        weights = [rng.randint(1, 2) for _ in range(count)]
        verdict = enumerate_feasibility(WeightedPath.of(lists, weights), cycle=True)
        for shift in range(1, count):
            rotated = WeightedPath.of(lists[shift:] + lists[:shift], weights[shift:] + weights[:shift])
            assert enumerate_feasibility(rotated, cycle=True) == verdict
            found = solve_cycle_exact(rotated)
            assert (found is not None) == verdict
            if found is not None:
                assert cycle_valid(rotated, found)


def test_solutions_verify_and_satisfy_hall():
    rng = random.Random(8)
    for _ in range(200):
        path = random_path(rng, max_n=6, palette=6)
        coloring = solve_path_exact(path)
        assert (coloring is not None) == enumerate_feasibility(path)
        if coloring is not None:
            assert verify_coloring(path.edges(), path.list_map(), path.weight_map(), coloring).ok
            assert hall_check_path(path)


def test_is_similar():
    assert is_similar(WeightedPath.of([{1}, {1, 2}, {2}], 1), WeightedPath.of([{1}, {1}, {3}], 1))
    assert not is_similar(WeightedPath.of([{1}, {2}], 1), WeightedPath.of([{1}, {1}], 1))

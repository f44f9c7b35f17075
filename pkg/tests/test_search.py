import json

import numpy as np
import pytest

from conway_doughnuts.angleform import Shape, random_assignment
from conway_doughnuts.diagram import from_labelled
from conway_doughnuts.doughnut import develop_doughnut, doughnut_entries
from conway_doughnuts.errors import HoleAbsent
from conway_doughnuts.search import (FormTable, SearchBounds, analytic_candidate_count, catalan,
                                     enumerate_hole_triangulations, merge_results,
                                     search_hole_fill, solution_keys)


@pytest.mark.parametrize("k, count", [(3, 1), (4, 2), (5, 5), (6, 14), (9, 429)])
def test_catalan_counts(k, count):
    tris = enumerate_hole_triangulations(k)
    assert len(tris) == count == catalan(k - 2)
    assert len({t.triangles for t in tris}) == count
    for t in tris:
        assert len(t.triangles) == k - 2
        assert all(u < v < w for u, v, w in t.triangles)


def test_single_interior_vertex_adds_the_fan():
    tris = enumerate_hole_triangulations(4, "single-interior-vertex")
    assert len(tris) == 3
    assert tris[-1].center and tris[-1].triangles == ((0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4))


def test_bad_inputs():
    with pytest.raises(ValueError):
        enumerate_hole_triangulations(2)
    with pytest.raises(ValueError):
        SearchBounds(max_numerator=0)
    with pytest.raises(ValueError):
        SearchBounds(triangulation_policy="several")


@pytest.mark.parametrize("n", [2, 3])
def test_hole_absent(n):
    with pytest.raises(HoleAbsent):
        search_hole_fill(n)


def test_form_table_representatives():
    table = FormTable(4, 4)
    # a + tau/8 is canonical (1, 0, 1)
    assert str(table.reps[(1, 0, 1)]) == "a + 1/8*tau"
    assert len(table.keys) == len(set(table.keys))
    assert table.lookup((1.0, 0.0, 1 / 8 + 1e-12)) == table.reps[(1, 0, 1)]
    assert table.lookup((0.5, 0.0, 0.0)) is None


def test_conway_fill_is_found():
    result = search_hole_fill(4)
    assert len(result.solutions) == 1
    sol = result.solutions[0]
    assert sol["triangles"] == [["P2", "Q2", "R2"]]
    assert sol["shapes"] == [["a + 1/8*tau", "b + 1/8*tau", "c + 1/8*tau"]]


def test_found_fill_closes_on_many_assignments():
    result = search_hole_fill(4)
    rng = np.random.default_rng(7)
    for sol in result.solutions:
        entries, _ = doughnut_entries(4)
        fill = [(f"fill{j}", tuple(lab), Shape(tuple(shape)))
                for j, (lab, shape) in enumerate(zip(sol["triangles"], sol["shapes"]))]
        spec = from_labelled(4, entries + fill)
        for _ in range(100):
            placed = develop_doughnut(spec, random_assignment(4, rng), check=False)
            assert placed.normalized_residual < 1e-9


def test_five_has_no_linear_fill():
    result = search_hole_fill(5, SearchBounds(max_numerator=4, max_fill_triangles=4))
    assert result.solutions == []
    assert result.triangulations_examined == 14
    assert result.exhaustive


def test_fill_cap_skips_large_triangulations():
    result = search_hole_fill(5, SearchBounds(max_fill_triangles=3))
    assert result.triangulations_examined == 0 and result.candidates_examined == 0


def test_candidate_count_is_analytic():
    bounds = SearchBounds(max_numerator=2)
    result = search_hole_fill(5, bounds)
    assert result.candidates_examined == analytic_candidate_count(5, bounds)
    assert result.candidates_examined == 14 * (5 ** 4) ** 12


def test_split_and_merge():
    bounds = SearchBounds(triangulation_policy="single-interior-vertex")
    whole = search_hole_fill(4, bounds)
    parts = [search_hole_fill(4, bounds, 0, 1), search_hole_fill(4, bounds, 1, 2)]
    assert merge_results(parts).to_json() == whole.to_json()
    whole5 = search_hole_fill(5)
    parts5 = [search_hole_fill(5, start=lo, stop=hi) for lo, hi in ((0, 5), (5, 9), (9, 14))]
    assert merge_results(parts5[::-1]).to_json() == whole5.to_json()


def test_merge_rejects_gaps():
    with pytest.raises(ValueError):
        merge_results([search_hole_fill(5, start=0, stop=3), search_hole_fill(5, start=4, stop=6)])


def test_monotone_in_bounds():
    small = search_hole_fill(4, SearchBounds(max_numerator=1))
    large = search_hole_fill(4, SearchBounds(max_numerator=2))
    assert solution_keys(small) <= solution_keys(large)
    assert len(small.solutions) == len(large.solutions) == 1


def test_seed_independence():
    one = search_hole_fill(4, seed=0)
    two = search_hole_fill(4, seed=99)
    assert solution_keys(one) == solution_keys(two)


def test_json_output():
    data = json.loads(search_hole_fill(4).to_json())
    assert data["solution_count"] == 1
    assert data["bounds"]["max_numerator"] == 4
    assert int(data["candidates_examined"]) == 9 ** 12


def test_parallel_slices_match_serial():
    from conway_doughnuts.search import search_parallel
    assert search_parallel(5, workers=3).to_json() == search_hole_fill(5).to_json()

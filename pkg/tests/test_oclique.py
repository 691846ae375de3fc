from itertools import combinations

import pytest
from hypothesis import given, settings

from orientcol.digraph import OrientedGraph, converse, directed_cycle, directed_path, transitive_tournament
from orientcol.enumeration import enumerate_oriented_graphs
from orientcol.homomorphism import oriented_chromatic_number
from orientcol.oclique import (
    OcliqueSearchTask,
    candidate_underlying_graphs,
    is_oclique,
    oclique_order_bound,
    orient_as_oclique,
    search_ocliques,
    two_dipath_count_holds,
)

from conftest import oriented_graphs


def test_examples():
    assert is_oclique(directed_cycle(3))
    assert is_oclique(transitive_tournament(5))
    assert is_oclique(directed_path(3))
    assert not is_oclique(OrientedGraph(3, [(0, 1), (2, 1)]))  # no 2-dipath joins 0 and 2
    v = is_oclique(directed_cycle(7))
    assert not v and v.witness is not None and v.distance >= 3
    assert is_oclique(OrientedGraph(1))


def test_order_bound():
    assert [oclique_order_bound(d) for d in (1, 2, 3, 4)] == [2, 5, 8, 13]
    with pytest.raises(ValueError):
        oclique_order_bound(0)


@settings(max_examples=200)
@given(oriented_graphs(max_order=8))
def test_bound_and_count_hold_for_every_oclique(g):
    if g.order == 0 or not is_oclique(g):
        return
    delta = max(1, g.max_degree())
    assert g.order <= oclique_order_bound(delta)
    assert two_dipath_count_holds(g.order, [g.degree(v) for v in range(g.order)])
    assert bool(is_oclique(converse(g)))


def test_small_theorem_oracle():
    for n in range(1, 5):
        for g in enumerate_oriented_graphs(n):
            assert bool(is_oclique(g)) == (oriented_chromatic_number(g, 7).value == n)


def test_exhaustive_subcubic_search():
    seven = search_ocliques(OcliqueSearchTask(3, 7))
    assert seven.exhaustive and len(seven.found) >= 1
    assert all(is_oclique(g) and g.max_degree() <= 3 for g in seven.found)
    eight = search_ocliques(OcliqueSearchTask(3, 8))
    assert eight.candidates == 2 and eight.found == ()
    assert len(candidate_underlying_graphs(8, 3)) == 2


def test_task_validation():
    with pytest.raises(ValueError):
        OcliqueSearchTask(4, 11)
    with pytest.raises(ValueError):
        OcliqueSearchTask(4, 11, mode="random")
    with pytest.raises(ValueError):
        OcliqueSearchTask(4, 11, mode="sideways", seed=1)


def test_random_search_is_deterministic():
    task = OcliqueSearchTask(3, 7, mode="random", budget=20_000, seed=5)
    a, b = search_ocliques(task), search_ocliques(task)
    assert a.as_dict() == b.as_dict()
    assert not a.exhaustive
    for g in a.found:
        assert is_oclique(g)


def test_random_search_reports_budget_exhaustion():
    res = search_ocliques(OcliqueSearchTask(3, 8, mode="random", budget=500, seed=1))
    assert res.found == () and res.extra["budget_exhausted"]


def test_orient_as_oclique():
    tri = orient_as_oclique(3, [(0, 1), (1, 2), (0, 2)])
    assert tri is not None and is_oclique(tri)
    assert sorted(tri.arcs) == [(0, 1), (0, 2), (1, 2)]
    c5 = orient_as_oclique(5, [(i, (i + 1) % 5) for i in range(5)])
    assert c5 is not None and is_oclique(c5)
    assert orient_as_oclique(4, [(0, 1), (1, 2), (2, 3)]) is None  # P4 has ends at distance 3
    c4 = orient_as_oclique(4, [(i, (i + 1) % 4) for i in range(4)])
    assert sorted(c4.arcs) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert orient_as_oclique(5, [(0, 1), (0, 2), (0, 3), (0, 4)]) is None  # star K_{1,4}
    with pytest.raises(ValueError):
        orient_as_oclique(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        orient_as_oclique(30, list(combinations(range(8), 2)))


def test_orient_as_oclique_agrees_with_exhaustive():
    from orientcol.enumeration import enumerate_bounded_degree_graphs, orientations

    for n in (4, 5, 6):
        for u in enumerate_bounded_degree_graphs(n, 3):
            got = orient_as_oclique(n, u.edges)
            exists = any(is_oclique(g) for g in orientations(n, u.edges))
            assert (got is not None) == exists

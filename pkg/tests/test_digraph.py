import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orientcol.digraph import (
    Colouring,
    GraphFormatError,
    InvalidGraphError,
    OrientedGraph,
    bipartite_clique_example,
    converse,
    directed_cycle,
    directed_path,
    format_certificate,
    format_dgf,
    format_undirected_dgf,
    pair_distance,
    parse_certificate,
    parse_dgf,
    parse_undirected_dgf,
    structural_queries,
    transitive_tournament,
    validate_oriented_colouring,
    weak_diameter,
    weak_diameter_at_most_two,
)

from conftest import oriented_graphs


def test_parse_path():
    g = parse_dgf("3 2\n0 1\n1 2")
    assert g.order == 3 and g.sorted_arcs() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text, line, words",
    [
        ("2 2\n0 1\n1 0", 3, "2-cycle"),
        ("1 1\n0 0", 2, "loop"),
        ("3 1\n0 3", 2, "out of range"),
        ("3 2\n0 1\n0 1", 3, "duplicate"),
        ("3\n0 1", 1, "header"),
        ("x 1\n0 1", 1, "not an integer"),
        ("3 2\n0 1", 2, "expected 2 arc lines"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, words):
    with pytest.raises(GraphFormatError) as err:
        parse_dgf(text)
    assert err.value.line == line
    assert words in str(err.value)


def test_comments_and_trailing_newline():
    g = parse_dgf("# a comment\n3 1\n# another\n2 0\n")
    assert g.sorted_arcs() == [(2, 0)]


def test_constructor_rejects_bad_arcs():
    for arcs in ([(0, 0)], [(0, 1), (1, 0)], [(0, 5)]):
        with pytest.raises(InvalidGraphError):
            OrientedGraph(3, arcs)


@given(oriented_graphs())
def test_dgf_round_trip(g):
    text = format_dgf(g)
    again = parse_dgf(text)
    assert again == g
    assert format_dgf(again) == text


def test_undirected_dgf():
    order, edges = parse_undirected_dgf("4 3 undirected\n0 1\n2 1\n3 2\n")
    assert order == 4 and edges == [(0, 1), (1, 2), (2, 3)]
    assert parse_undirected_dgf(format_undirected_dgf(order, edges)) == (order, edges)
    with pytest.raises(GraphFormatError, match="duplicate edge"):
        parse_undirected_dgf("2 2 undirected\n0 1\n1 0\n")


def test_converse_examples():
    assert converse(directed_path(3)).sorted_arcs() == [(1, 0), (2, 1)]
    c3 = directed_cycle(3)
    assert sorted(converse(c3).arcs) == [(0, 2), (1, 0), (2, 1)]


@given(oriented_graphs())
def test_converse_is_an_involution(g):
    assert converse(converse(g)) == g
    assert converse(g).order == g.order


def test_weak_diameter_examples():
    assert weak_diameter(directed_path(3)) == 2
    assert weak_diameter(OrientedGraph(2)) == math.inf
    assert weak_diameter(directed_cycle(5)) == 2
    assert weak_diameter(OrientedGraph(1)) == 0
    assert weak_diameter(directed_path(4)) == 3


def _nx_weak_diameter(g):
    d = nx.DiGraph()
    d.add_nodes_from(range(g.order))
    d.add_edges_from(g.arcs)
    lengths = dict(nx.all_pairs_shortest_path_length(d))
    worst = 0
    for x in range(g.order):
        for y in range(x + 1, g.order):
            w = min(lengths[x].get(y, math.inf), lengths[y].get(x, math.inf))
            worst = max(worst, w)
    return worst


@given(oriented_graphs(max_order=9))
def test_weak_diameter_matches_networkx(g):
    assert weak_diameter(g) == _nx_weak_diameter(g)
    assert weak_diameter_at_most_two(g) == (weak_diameter(g) <= 2)


@given(oriented_graphs())
def test_weak_diameter_converse_invariant(g):
    assert weak_diameter(g) == weak_diameter(converse(g))


def test_pair_distance():
    d = pair_distance(directed_path(3), 0, 2)
    assert (d.forward, d.backward, d.weak) == (2, math.inf, 2)
    assert pair_distance(directed_path(3), 1, 1).weak == 0


def test_validator_examples():
    p = directed_path(3)
    assert validate_oriented_colouring(p, [0, 1, 2]).valid
    bad = validate_oriented_colouring(p, [0, 1, 0])
    assert not bad.valid and bad.condition == 2
    two = OrientedGraph(4, [(0, 1), (2, 3)])
    rep = validate_oriented_colouring(two, Colouring((0, 1, 1, 0), 2))
    assert not rep.valid and rep.condition == 2 and rep.arcs == ((0, 1), (2, 3))
    same = validate_oriented_colouring(p, [0, 0, 1])
    assert same.condition == 1


def test_validator_requires_every_vertex():
    with pytest.raises(ValueError):
        validate_oriented_colouring(directed_path(3), [0, 1])
    with pytest.raises(ValueError):
        validate_oriented_colouring(directed_path(3), {0: 0, 1: 1})


@given(oriented_graphs(max_order=6), st.randoms(use_true_random=False))
def test_valid_colourings_stay_valid_on_converse(g, rnd):
    colours = [rnd.randrange(4) for _ in range(g.order)]
    rep = validate_oriented_colouring(g, colours)
    assert rep.valid == validate_oriented_colouring(converse(g), colours).valid


@settings(max_examples=60)
@given(oriented_graphs(min_order=3, max_order=8), st.randoms(use_true_random=False))
def test_validator_rejects_equal_dipath_ends(g, rnd):
    for u, v in g.sorted_arcs():
        for w in g.out_neighbours(v):
            colours = [rnd.randrange(g.order) for _ in range(g.order)]
            colours[w] = colours[u]
            assert not validate_oriented_colouring(g, colours).valid


def test_bipartite_example_needs_all_colours():
    g = bipartite_clique_example(3)
    assert g.order == 6 and len(g.arcs) == 9
    assert weak_diameter(g) == 2


def test_structural_queries():
    r = structural_queries(directed_path(3))
    assert r.sources == (0,) and r.sinks == (2,) and r.max_degree == 2
    assert r.connected and r.cut_edges == ((0, 1), (1, 2))
    r = structural_queries(directed_cycle(3))
    assert r.sources == () and r.sinks == () and r.max_degree == 2 and r.cut_edges == ()
    r = structural_queries(transitive_tournament(4))
    assert len(r.sources) == 1 and len(r.sinks) == 1 and r.max_degree == 3
    assert r.as_dict()["degree"] == [3, 3, 3, 3]


def test_certificate_round_trip():
    text = format_certificate([2, 0, 1], ["method: test"])
    mapping, meta = parse_certificate(text)
    assert mapping == {0: 2, 1: 0, 2: 1} and meta == {"method": "test"}
    with pytest.raises(GraphFormatError):
        parse_certificate("0 1\n0 2\n")
    with pytest.raises(GraphFormatError):
        parse_certificate("1 1\n0 2\n")


def test_colouring_palette_check():
    with pytest.raises(ValueError):
        Colouring((0, 3), 2)
    c = Colouring.from_mapping({0: 1, 1: 0}, 2)
    assert c.palette_size == 2 and c.colours_used == 2

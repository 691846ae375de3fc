from importlib import resources

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from orientcol.canon import canonical_form
from orientcol.digraph import OrientedGraph, directed_cycle, is_properly_subcubic
from orientcol.homomorphism import find_homomorphism, maps_to
from orientcol.patterns import (
    CatalogError,
    _split_z5,
    _verify,
    check_embedding,
    find_pattern,
    parse_catalog,
    reduce_fully,
    reduce_once,
    subdivide_arc,
)
from orientcol.randgraphs import make_rng, random_connected_orientation, random_reducible_instance


def _catalog_text():
    return resources.files("orientcol").joinpath("z_family.dgf").read_text()


def _has_adjacent_out3_in3(g):
    return any(
        (g.out_degree(u) == 3 and g.in_degree(v) == 3) or (g.in_degree(u) == 3 and g.out_degree(v) == 3)
        for u, v in g.arcs
    )


def test_catalog_shape(catalog):
    assert len(catalog.z_labelled) == 20
    assert [p.name for p in catalog.z_classes] == ["Z1", "~Z1", "Z2", "Z3"]
    assert len(catalog.r_family) == 20
    assert len(catalog.r_classes) == 5
    assert {p.graph.order for p in catalog.z_classes} == {5, 6}
    for r in catalog.r_family:
        z = catalog.member(r.source)
        assert r.graph.order == z.graph.order + 1
        assert len(r.graph.arcs) == len(z.graph.arcs)


def test_z_classes_do_not_map_to_qr7(catalog, qr7):
    for p in catalog.z_classes:
        assert find_homomorphism(p.graph, qr7).exhausted


def test_every_proper_subgraph_of_z1_maps(catalog, qr7):
    # minimality: deleting any arc of a class representative restores a map
    for p in catalog.z_classes:
        for u, v in p.graph.arcs:
            assert maps_to(p.graph.delete_arc(u, v), qr7)


def test_member_and_family_lookup(catalog):
    assert catalog.member("Z1*'").roles["z5"] == 4
    assert catalog.family("r") == catalog.r_family
    with pytest.raises(KeyError):
        catalog.member("Z9")
    with pytest.raises(ValueError):
        catalog.family("Q")


def test_corrupted_catalog_is_rejected():
    text = _catalog_text()
    # drop the last block
    cut = text.rsplit("name:", 1)[0]
    members = parse_catalog(cut)
    with pytest.raises(CatalogError) as err:
        _verify(members, [_split_z5(z) for z in members])
    assert err.value.invariant == "twenty labelled members"

    # reverse z1 -> z2 in Z1 only; Z1* no longer matches its partner
    lines = text.splitlines()
    start = lines.index("name: Z1")
    lines[lines.index("0 1", start)] = "1 0"
    members = parse_catalog("\n".join(lines))
    with pytest.raises(CatalogError):
        _verify(members, [_split_z5(z) for z in members])


def test_catalog_parse_errors():
    from orientcol.digraph import GraphFormatError

    with pytest.raises(GraphFormatError):
        parse_catalog("3 0\n")
    with pytest.raises(GraphFormatError):
        parse_catalog("name: X\n2 1\n0 1\n")
    with pytest.raises(GraphFormatError):
        parse_catalog("name: X\nroles: z1=0\n2 1\n0 1\n")


def test_subdividing_z_arcs(catalog, qr7):
    # a subdivision maps exactly when no Z pattern survives; Z1 with z1z2 subdivided is ~Z3
    blocked = 0
    for p in catalog.z_classes:
        for arc in p.graph.arcs:
            sub = subdivide_arc(p.graph, arc)
            has_z = find_pattern(sub, "Z", catalog) is not None
            blocked += has_z
            assert maps_to(sub, qr7) == (not has_z)
    assert blocked >= 1
    with pytest.raises(ValueError):
        subdivide_arc(directed_cycle(3), (1, 0))


def test_find_pattern_examples(catalog):
    for p in catalog.z_labelled:
        emb = find_pattern(p.graph, "Z", catalog)
        assert emb is not None
        check_embedding(p.graph, emb)
    assert find_pattern(directed_cycle(7), "Z", catalog) is None
    assert find_pattern(directed_cycle(7), "R", catalog) is None
    with pytest.raises(ValueError):
        find_pattern(directed_cycle(3), "X", catalog)


def test_reduce_once_on_a_bare_r_member(catalog):
    r = catalog.member("R(Z1)")
    g = OrientedGraph(r.graph.order, list(r.graph.arcs) + [(r.vertex("r2"), r.vertex("r1"))])
    assert is_properly_subcubic(g)
    emb = find_pattern(g, "R", catalog)
    assert emb is not None
    h, step = reduce_once(g, emb)
    # the pattern interior goes; r1 -> r -> r2 closes the 3-cycle with r2 -> r1
    assert canonical_form(h) == canonical_form(directed_cycle(3))
    assert len(step.deleted) == 4 and step.new_vertex == 2


def test_reduce_once_rejects_bad_input(catalog):
    z = catalog.member("Z1")
    emb = find_pattern(z.graph, "Z", catalog)
    with pytest.raises(ValueError):
        reduce_once(z.graph, emb)
    r = catalog.member("R(Z2)")
    emb = find_pattern(r.graph, "R", catalog)
    with pytest.raises(ValueError):
        reduce_once(directed_cycle(3), emb)


def test_reduce_fully_without_source_or_sink_is_a_no_op():
    g = directed_cycle(6)
    h, steps = reduce_fully(g)
    assert steps == [] and h is g


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 2**32 - 1), st.integers(8, 16), st.booleans())
def test_reduction_lemma(seed, n, plant):
    from orientcol.paley import paley_tournament

    qr7 = paley_tournament(7).graph
    rng = make_rng(seed)
    g = random_reducible_instance(rng, max(n, 14) if plant else n, plant_z=plant)
    emb = find_pattern(g, "R")
    assert emb is not None
    h, step = reduce_once(g, emb)
    assert h.order == g.order - len(step.deleted) + 1
    assert find_homomorphism(g, qr7).found == find_homomorphism(h, qr7).found


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(8, 20))
def test_reduce_fully_shrinks(seed, n):
    g = random_reducible_instance(make_rng(seed), n)
    h, steps = reduce_fully(g)
    assert 1 <= len(steps) <= g.order // 3
    assert find_pattern(h, "R") is None
    assert h.order < g.order


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(4, 18))
def test_corollary_lemma4_and_no_adjacent_theorem(seed, n):
    from orientcol.paley import paley_tournament

    qr7 = paley_tournament(7).graph
    g = random_connected_orientation(make_rng(seed), n, 3, extra=0.4)
    if not is_properly_subcubic(g):
        return
    mapped = maps_to(g, qr7)
    if find_pattern(g, "Z") is not None:
        assert not mapped
    if not _has_adjacent_out3_in3(g):
        assert mapped
    h, _ = reduce_fully(g)
    if find_pattern(h, "Z") is None:
        assert maps_to(h, qr7)

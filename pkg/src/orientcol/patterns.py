"""The forbidden Z patterns for QR_7, the derived R family and the reduction.

The Z members ship as labelled DGF blocks in ``z_family.dgf``. Every structural
claim the rest of the package relies on is re-checked when the catalog loads,
so a mistyped arc fails loudly instead of silently corrupting reductions.

An R member comes from a Z member by splitting ``z5``: if the 2-dipath is
``a -> z5 -> b`` then ``r1 -> b`` and ``a -> r2`` replace it. Identifying
``r1`` with ``r2`` gives back the Z member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Mapping

from .canon import canonical_form
from .digraph import GraphFormatError, OrientedGraph, is_properly_subcubic, parse_dgf
from .homomorphism import find_embedding, find_homomorphism
from .paley import paley_tournament

Z_ROLES = ("z1", "z2", "z3", "z4", "z5", "z6")
INTERIOR_ROLES = ("z1", "z2", "z3", "z4", "z6")


class CatalogError(RuntimeError):
    """A catalog invariant failed at load time."""

    def __init__(self, invariant: str, member: str, detail: str = ""):
        super().__init__(f"catalog invariant '{invariant}' violated by {member}" + (f": {detail}" if detail else ""))
        self.invariant = invariant
        self.member = member


@dataclass(frozen=True)
class Pattern:
    name: str
    family: str  # "Z" or "R"
    graph: OrientedGraph
    roles: Mapping[str, int]
    source: str | None = None  # for R members: the Z member it was split from

    def vertex(self, role: str) -> int:
        return self.roles[role]

    def has_role(self, role: str) -> bool:
        return role in self.roles


@dataclass(frozen=True)
class PatternEmbedding:
    pattern: Pattern
    image: tuple[int, ...]  # pattern vertex -> host vertex

    @property
    def role_map(self) -> dict[str, int]:
        return {role: self.image[v] for role, v in self.pattern.roles.items()}

    def as_dict(self) -> dict:
        return {"pattern": self.pattern.name, "family": self.pattern.family, "roles": self.role_map}


@dataclass(frozen=True)
class PatternCatalog:
    z_labelled: tuple[Pattern, ...]
    z_classes: tuple[Pattern, ...]  # first labelled member of each isomorphism class
    r_family: tuple[Pattern, ...]
    r_classes: tuple[Pattern, ...]
    checks: tuple[str, ...] = field(default=())

    def member(self, name: str) -> Pattern:
        for p in self.z_labelled + self.r_family:
            if p.name == name:
                return p
        raise KeyError(name)

    def family(self, which: str) -> tuple[Pattern, ...]:
        if which.upper() == "Z":
            return self.z_labelled
        if which.upper() == "R":
            return self.r_family
        raise ValueError(f"unknown pattern family {which!r}; expected Z or R")


# -- catalog data -------------------------------------------------------------------


def parse_catalog(text: str) -> list[Pattern]:
    """Parse named DGF blocks: ``name:`` line, ``roles:`` line, then a DGF body."""
    blocks: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name:"):
            blocks.append((lineno, [raw]))
        elif not blocks:
            raise GraphFormatError("catalog data before the first 'name:' line", lineno)
        else:
            blocks[-1][1].append(raw)
    out = []
    for lineno, lines in blocks:
        name = lines[0].split(":", 1)[1].strip()
        if len(lines) < 3 or not lines[1].strip().startswith("roles:"):
            raise GraphFormatError(f"block {name!r} lacks a 'roles:' line", lineno + 1)
        roles = {}
        for token in lines[1].split(":", 1)[1].split():
            role, _, v = token.partition("=")
            if role not in Z_ROLES or not v.isdigit():
                raise GraphFormatError(f"bad role token {token!r}", lineno + 1)
            roles[role] = int(v)
        try:
            g = parse_dgf("\n".join(lines[2:]))
        except GraphFormatError as exc:
            raise GraphFormatError(f"block {name!r}: {exc}", None if exc.line is None else lineno + 1 + exc.line) from exc
        if sorted(roles.values()) != list(range(g.order)):
            raise GraphFormatError(f"block {name!r}: roles must label every vertex exactly once", lineno + 1)
        out.append(Pattern(name, "Z", g, roles))
    return out


def _split_z5(z: Pattern) -> Pattern:
    g, roles = z.graph, z.roles
    z5 = roles["z5"]
    (a,) = g.in_neighbours(z5)
    (b,) = g.out_neighbours(z5)
    keep = [v for v in range(g.order) if v != z5]
    new_index = {v: i for i, v in enumerate(keep)}
    r1, r2 = len(keep), len(keep) + 1
    arcs = [(new_index[u], new_index[v]) for u, v in g.arcs if z5 not in (u, v)]
    arcs += [(r1, new_index[b]), (new_index[a], r2)]
    new_roles = {role: new_index[v] for role, v in roles.items() if role != "z5"}
    new_roles.update(r1=r1, r2=r2)
    return Pattern(f"R({z.name})", "R", OrientedGraph(len(keep) + 2, arcs), new_roles, source=z.name)


def identify_r1_r2(r: Pattern, source: Pattern) -> OrientedGraph:
    """Merge r1 and r2 into one vertex, labelled as in ``source`` (z5 takes the merged vertex)."""
    place = {v: source.roles[role] for role, v in r.roles.items() if role not in ("r1", "r2")}
    place[r.roles["r1"]] = place[r.roles["r2"]] = source.roles["z5"]
    return OrientedGraph(r.graph.order - 1, [(place[u], place[v]) for u, v in r.graph.arcs])


def _labelled_variant(p: Pattern, flip) -> OrientedGraph:
    """Reverse the arcs selected by ``flip(role_u, role_v)``."""
    name_of = {v: role for role, v in p.roles.items()}
    arcs = [(v, u) if flip(name_of[u], name_of[v]) else (u, v) for u, v in p.graph.arcs]
    return OrientedGraph(p.graph.order, arcs)


def _same_labelled(a: Pattern, b_graph: OrientedGraph, b_roles: Mapping[str, int]) -> bool:
    if set(a.roles) != set(b_roles):
        return False
    to_b = {a.roles[r]: b_roles[r] for r in a.roles}
    return sorted((to_b[u], to_b[v]) for u, v in a.graph.arcs) == sorted(b_graph.arcs)


def _has_adjacent_out3_in3(g: OrientedGraph) -> bool:
    return any(g.out_degree(u) == 3 and g.in_degree(v) == 3 for u, v in g.arcs) or any(
        g.in_degree(u) == 3 and g.out_degree(v) == 3 for u, v in g.arcs
    )


def _verify(z_members: list[Pattern], r_members: list[Pattern]) -> list[str]:
    checks = []
    qr7 = paley_tournament(7).graph
    by_name = {p.name: p for p in z_members}

    def fail(inv, member, detail=""):
        raise CatalogError(inv, member, detail)

    if len(z_members) != 20:
        fail("twenty labelled members", "catalog", f"found {len(z_members)}")
    forms: dict[tuple, str] = {}
    for p in z_members:
        forms.setdefault(canonical_form(p.graph), p.name)
    if len(forms) != 4:
        fail("four isomorphism classes", "catalog", f"found {len(forms)}")
    checks.append("4 isomorphism classes among 20 labelled members")

    for p in z_members:
        if find_homomorphism(p.graph, qr7).verdict != "exhausted":
            fail("no homomorphism to QR_7", p.name)
    checks.append("no member maps to QR_7 (complete search)")

    for p in z_members:
        g, r = p.graph, p.roles
        dipath = (g.has_arc(r["z4"], r["z5"]) and g.has_arc(r["z5"], r["z3"])) or (
            g.has_arc(r["z3"], r["z5"]) and g.has_arc(r["z5"], r["z4"])
        )
        if not dipath or g.degree(r["z5"]) != 2:
            fail("z3-z5-z4 is a 2-dipath through the degree-2 vertex z5", p.name)
        if ("z6" in r) != p.name.lstrip("~").startswith("Z3"):
            fail("z6 exists exactly in the Z3 variants", p.name)
        if not g.adjacent(r["z1"], r["z2"]) and "z6" not in r:
            fail("z1 adjacent to z2", p.name)
        if any(g.degree(r[k]) != 3 for k in ("z1", "z2", "z3", "z4")):
            fail("z1..z4 have degree 3", p.name)
        if not _has_adjacent_out3_in3(g):
            fail("an out-degree-3 vertex adjacent to an in-degree-3 vertex", p.name)
    base = [p for p in z_members if p.name in ("Z1", "Z2", "Z3")]
    for p in base:
        if p.name == "Z1":
            ok = p.graph.has_arc(p.roles["z4"], p.roles["z5"]) and p.graph.has_arc(p.roles["z5"], p.roles["z3"])
        else:
            ok = p.graph.has_arc(p.roles["z4"], p.roles["z5"])
        if not ok:
            fail("base members carry the dipath z4 -> z5 -> z3", p.name)
    checks.append("z4 -> z5 -> z3 dipath (reversed in primed variants); z6 only in Z3")

    for p in z_members:
        conv_name = p.name[1:] if p.name.startswith("~") else "~" + p.name
        other = by_name.get(conv_name)
        if other is None or not _same_labelled(other, p.graph.converse(), p.roles):
            fail("closed under converse", p.name)
        stem = p.name.lstrip("~")
        prime_name = p.name[:-1] if stem.endswith("'") else p.name + "'"
        swapped = _labelled_variant(p, lambda a, b: "z5" in (a, b))
        other = by_name.get(prime_name)
        if other is None or not _same_labelled(other, swapped, p.roles):
            fail("closed under reversing the z3-z4 2-dipath", p.name)
        if canonical_form(swapped) != canonical_form(p.graph):
            fail("reversing the z3-z4 2-dipath is a relabelling", p.name)
        if not stem.startswith("Z2"):
            star = stem.replace("*", "") if "*" in stem else stem[:2] + "*" + stem[2:]
            star_name = ("~" if p.name.startswith("~") else "") + star
            flipped = _labelled_variant(p, lambda a, b: {a, b} == {"z1", "z2"} or "z6" in (a, b))
            other = by_name.get(star_name)
            if other is None or not _same_labelled(other, flipped, p.roles):
                fail("closed under reversing the z1-z2 link", p.name)
    checks.append("closure under converse, z3-z4 dipath reversal and z1-z2 link reversal")

    for name in ("Z2", "Z3"):
        g = by_name[name].graph
        if canonical_form(g) != canonical_form(g.converse()):
            fail("self-converse", name)
    if canonical_form(by_name["Z1"].graph) == canonical_form(by_name["~Z1"].graph):
        fail("Z1 is not self-converse", "Z1")
    checks.append("Z2 and Z3 self-converse; Z1 not")

    z1 = by_name["Z1"]
    sub = subdivide_arc(z1.graph, (z1.roles["z1"], z1.roles["z2"]))
    if canonical_form(sub) != canonical_form(by_name["~Z3"].graph):
        fail("subdividing z1z2 in Z1 gives the converse of Z3", "Z1")
    checks.append("subdividing z1z2 in Z1 gives the converse of Z3")

    for r in r_members:
        src = by_name[r.source]
        merged = identify_r1_r2(r, src)
        if sorted(merged.arcs) != sorted(src.graph.arcs):
            fail("identifying r1 and r2 reproduces the source member", r.name)
        g = r.graph
        if not any(g.degree(v) == 3 and (g.in_degree(v) == 0 or g.out_degree(v) == 0) for v in range(g.order)):
            fail("a source or sink of degree 3", r.name)
    checks.append("R members: identification reproduces Z; each has a degree-3 source or sink")
    return checks


def _dedupe(patterns: list[Pattern]) -> tuple[Pattern, ...]:
    seen = set()
    out = []
    for p in patterns:
        f = canonical_form(p.graph)
        if f not in seen:
            seen.add(f)
            out.append(p)
    return tuple(out)


@lru_cache(maxsize=1)
def load_pattern_catalog() -> PatternCatalog:
    text = resources.files("orientcol").joinpath("z_family.dgf").read_text()
    z_members = parse_catalog(text)
    r_members = [_split_z5(z) for z in z_members]
    checks = _verify(z_members, r_members)
    return PatternCatalog(tuple(z_members), _dedupe(z_members), tuple(r_members), _dedupe(r_members), tuple(checks))


def subdivide_arc(g: OrientedGraph, arc: tuple[int, int]) -> OrientedGraph:
    """Replace ``u -> v`` by ``u -> w -> v`` with a new last vertex ``w``."""
    u, v = arc
    if not g.has_arc(u, v):
        raise ValueError(f"arc {u}->{v} is not present")
    w = g.order
    return OrientedGraph(g.order + 1, [a for a in g.arcs if a != (u, v)] + [(u, w), (w, v)])


# -- search and reduction -------------------------------------------------------------


def _degree_candidates(pattern: OrientedGraph, host: OrientedGraph) -> dict[int, int]:
    cand = {}
    for v in range(pattern.order):
        need_out, need_in = pattern.out_degree(v), pattern.in_degree(v)
        mask = 0
        for a in range(host.order):
            if host.out_degree(a) >= need_out and host.in_degree(a) >= need_in:
                mask |= 1 << a
        cand[v] = mask
    return cand


def find_pattern(g: OrientedGraph, family: str, catalog: PatternCatalog | None = None) -> PatternEmbedding | None:
    """First embedding of a family member, trying one member per isomorphism class in catalog order."""
    catalog = catalog or load_pattern_catalog()
    members = catalog.z_classes if family.upper() == "Z" else catalog.r_classes if family.upper() == "R" else None
    if members is None:
        raise ValueError(f"unknown pattern family {family!r}; expected Z or R")
    for p in members:
        if p.graph.order > g.order or len(p.graph.arcs) > len(g.arcs):
            continue
        out = find_embedding(p.graph, g, candidates=_degree_candidates(p.graph, g))
        if out.found:
            return PatternEmbedding(p, out.witness)
    return None


def check_embedding(g: OrientedGraph, emb: PatternEmbedding) -> None:
    p = emb.pattern.graph
    image = emb.image
    if len(image) != p.order or len(set(image)) != p.order:
        raise ValueError("embedding is not injective")
    if any(not 0 <= a < g.order for a in image):
        raise ValueError("embedding leaves the host graph")
    for u, v in p.arcs:
        if not g.has_arc(image[u], image[v]):
            raise ValueError(f"pattern arc {u}->{v} is not mapped onto a host arc")


@dataclass(frozen=True)
class ReductionStep:
    embedding: PatternEmbedding
    deleted: tuple[int, ...]  # host vertices removed
    new_vertex: int  # index of r in the reduced graph
    old_labels: tuple[int | None, ...]  # reduced vertex -> host vertex (None for r)

    def as_dict(self) -> dict:
        return {
            **self.embedding.as_dict(),
            "deleted": list(self.deleted),
            "new_vertex": self.new_vertex,
        }


def reduce_once(g: OrientedGraph, emb: PatternEmbedding) -> tuple[OrientedGraph, ReductionStep]:
    """Delete the pattern interior and splice ``r1 -> r -> r2`` in its place."""
    if emb.pattern.family != "R":
        raise ValueError("reduction needs an R-pattern embedding")
    if not is_properly_subcubic(g):
        raise ValueError("reduction is defined only for properly subcubic graphs")
    check_embedding(g, emb)
    roles = emb.role_map
    deleted = sorted(roles[r] for r in INTERIOR_ROLES if r in roles)
    rest, old = g.delete_vertices(deleted)
    new_of = {v: i for i, v in enumerate(old)}
    r = rest.order
    reduced = OrientedGraph(r + 1, list(rest.arcs) + [(new_of[roles["r1"]], r), (r, new_of[roles["r2"]])])
    step = ReductionStep(emb, tuple(deleted), r, tuple(old) + (None,))
    return reduced, step


def reduce_fully(g: OrientedGraph, catalog: PatternCatalog | None = None) -> tuple[OrientedGraph, list[ReductionStep]]:
    if not is_properly_subcubic(g):
        raise ValueError("reduction is defined only for properly subcubic graphs")
    steps = []
    while True:
        emb = find_pattern(g, "R", catalog)
        if emb is None:
            return g, steps
        g, step = reduce_once(g, emb)
        steps.append(step)

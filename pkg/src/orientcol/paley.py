"""Paley tournaments and the structural properties used by the colouring arguments."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .digraph import OrientedGraph, bits


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PaleyTournament:
    q: int
    graph: OrientedGraph
    residues: frozenset[int]


def quadratic_residues(q: int) -> frozenset[int]:
    return frozenset(x * x % q for x in range(1, q))


def paley_tournament(q: int) -> PaleyTournament:
    """QR_q: arc i -> j iff j - i is a non-zero square mod q (q prime, q = 3 mod 4)."""
    if not is_prime(q):
        raise ValueError(f"q = {q} is not prime")
    if q % 4 != 3:
        raise ValueError(f"q = {q} is not 3 mod 4; -1 would be a square and the relation symmetric")
    res = quadratic_residues(q)
    arcs = [(i, (i + r) % q) for i in range(q) for r in res]
    return PaleyTournament(q, OrientedGraph(q, arcs), res)


def _as_graph(t) -> OrientedGraph:
    return t.graph if isinstance(t, PaleyTournament) else t


@dataclass(frozen=True)
class PropertyReport:
    name: str
    holds: bool | None  # None: undecided by this tool
    params: dict[str, Any] = field(default_factory=dict)
    witness: Any = None
    counterexample: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "holds": self.holds,
            "params": self.params,
            "witness": self.witness,
            "counterexample": self.counterexample,
            "details": self.details,
        }


# -- Property P_{i,j} -----------------------------------------------------------------
#
# Sign n_r = '+' means x_r is an out-neighbour of the witness y (y -> x_r), so the
# admissible y for that coordinate are the in-neighbours of x_r.


def _pij_scan(out_mask, in_mask, n: int, i: int, j: int, first: int):
    """Scan subsets whose least vertex is ``first``; return the first failure or None.

    ``pools[k]`` holds the admissible witnesses for sign vector ``k`` (first
    coordinate most significant, '+' = 0), so failures come out in
    (subset, sign vector) lexicographic order.
    """
    rows = [(in_mask[x], out_mask[x]) for x in range(n)]

    def rec(start: int, depth: int, chosen: list[int], pools: list[int]):
        if depth == i:
            if j == 1:
                if all(pools):
                    return None
                k = pools.index(0)
            else:
                for k, p in enumerate(pools):
                    if p.bit_count() < j:
                        break
                else:
                    return None
            signs = format(k, f"0{i}b").translate({48: "+", 49: "-"})
            return list(chosen), signs, pools[k].bit_count()
        for x in range(start, n - (i - depth) + 1):
            plus, minus = rows[x]
            chosen.append(x)
            hit = rec(x + 1, depth + 1, chosen, [q for p in pools for q in (p & plus, p & minus)])
            chosen.pop()
            if hit is not None:
                return hit
        return None

    plus, minus = rows[first]
    return rec(first + 1, 1, [first], [plus, minus])


def _pij_worker(args):
    out_mask, in_mask, n, i, j, first = args
    return first, _pij_scan(out_mask, in_mask, n, i, j, first)


def check_property_pij(t, i: int, j: int, workers: int = 1) -> PropertyReport:
    """Exhaustively test Property P_{i,j}.

    Subsets are scanned in lexicographic order with sign vectors in ``+ < -``
    order, so the reported counterexample is the lexicographically first failure
    regardless of ``workers``.
    """
    g = _as_graph(t)
    n = g.order
    if i < 1 or j < 1:
        raise ValueError("i and j must be positive")
    if i >= n:
        raise ValueError(f"i = {i} must be smaller than the order {n}")
    firsts = list(range(n - i + 1))
    jobs = [(g.out_mask, g.in_mask, n, i, j, f) for f in firsts]
    failure = None
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(_pij_worker, jobs))
        for f in firsts:
            if results[f] is not None:
                failure = results[f]
                break
    else:
        for job in jobs:
            _, hit = _pij_worker(job)
            if hit is not None:
                failure = hit
                break
    params = {"i": i, "j": j}
    if failure is None:
        return PropertyReport(f"P_{i},{j}", True, params)
    subset, signs, found = failure
    return PropertyReport(
        f"P_{i},{j}",
        False,
        params,
        counterexample={"subset": subset, "signs": signs, "solutions": found},
    )


# -- symmetry -------------------------------------------------------------------------


def automorphisms(g: OrientedGraph) -> list[tuple[int, ...]]:
    """All automorphisms by exhaustive backtracking (small graphs only)."""
    return list(_isomorphisms(g, g))


def _isomorphisms(g: OrientedGraph, h: OrientedGraph):
    n = g.order
    if h.order != n or len(h.arcs) != len(g.arcs):
        return
    prof_g = [(g.out_degree(v), g.in_degree(v)) for v in range(n)]
    prof_h = [(h.out_degree(v), h.in_degree(v)) for v in range(n)]
    image = [-1] * n
    used = [False] * n

    def rec(v: int):
        if v == n:
            yield tuple(image)
            return
        for a in range(n):
            if used[a] or prof_h[a] != prof_g[v]:
                continue
            if all(g.has_arc(v, w) == h.has_arc(a, image[w]) and g.has_arc(w, v) == h.has_arc(image[w], a) for w in range(v)):
                image[v] = a
                used[a] = True
                yield from rec(v + 1)
                used[a] = False
        image[v] = -1

    yield from rec(0)


def _orbits(n: int, items, generators) -> list[list]:
    """Orbits of ``items`` under the group generated by ``generators`` (maps on vertices)."""
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in generators:
        for x in items:
            y = gen(x)
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict = {}
    for x in items:
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


EXHAUSTIVE_SYMMETRY_LIMIT = 9


def symmetry_report(t) -> PropertyReport:
    """Vertex-transitivity, arc-transitivity and self-converseness of a tournament."""
    g = _as_graph(t)
    if not g.is_tournament():
        raise ValueError("symmetry_report expects a tournament")
    n = g.order
    arcs = g.sorted_arcs()
    if n <= EXHAUSTIVE_SYMMETRY_LIMIT:
        auts = automorphisms(g)
        gens = [lambda v, p=p: p[v] for p in auts]
        vorb = _orbits(n, list(range(n)), gens)
        aorb = _orbits(n, arcs, [lambda a, p=p: (p[a[0]], p[a[1]]) for p in auts])
        conv = next(_isomorphisms(g, g.converse()), None)
        return PropertyReport(
            "symmetry",
            True,
            witness={"automorphism_group_order": len(auts), "converse_isomorphism": list(conv) if conv else None},
            details={
                "method": "exhaustive",
                "vertex_transitive": len(vorb) == 1,
                "arc_transitive": len(aorb) <= 1,
                "self_converse": conv is not None,
                "vertex_orbits": vorb,
                "arc_orbit_count": len(aorb),
            },
        )
    q = n
    res = sorted(quadratic_residues(q)) if is_prime(q) and q % 4 == 3 else None
    if res is None or g.arcs != paley_tournament(q).graph.arcs:
        return PropertyReport("symmetry", None, details={"method": "undecided by this tool", "order": n})
    return _paley_certificate(g, q, res)


def _paley_certificate(g: OrientedGraph, q: int, res: list[int]) -> PropertyReport:
    def check_aut(f) -> bool:
        return all(g.has_arc(f(u), f(v)) for u, v in g.arcs)

    translations = [lambda x, a=a: (x + a) % q for a in range(q)]
    scalings = [lambda x, s=s: s * x % q for s in res]
    if not all(check_aut(f) for f in translations + scalings):
        raise AssertionError("algebraic map failed to be an automorphism")
    gens = [translations[1]] + scalings
    vorb = _orbits(q, list(range(q)), gens)
    arcs = g.sorted_arcs()
    aorb = _orbits(q, arcs, [lambda a, f=f: (f(a[0]), f(a[1])) for f in gens])
    negate = lambda x: (-x) % q  # noqa: E731
    self_conv = all(g.has_arc(negate(v), negate(u)) for u, v in g.arcs)
    return PropertyReport(
        "symmetry",
        True,
        witness={
            "generators": ["x -> x + 1"] + [f"x -> {s}x" for s in res],
            "converse_isomorphism": "x -> -x",
        },
        details={
            "method": "paley-certificate",
            "vertex_transitive": len(vorb) == 1,
            "arc_transitive": len(aorb) == 1,
            "self_converse": self_conv,
            "arc_orbit_count": len(aorb),
        },
    )


# -- neighbourhood properties ----------------------------------------------------------


def arc_neighbourhood_profile(t, arc: tuple[int, int]) -> tuple[int, int, int, int]:
    """(common out, common in, out(x) & in(y), in(x) & out(y)) for the arc x -> y."""
    g = _as_graph(t)
    x, y = arc
    if not g.has_arc(x, y):
        raise ValueError(f"arc {x}->{y} is not present")
    o, i = g.out_mask, g.in_mask
    return (
        (o[x] & o[y]).bit_count(),
        (i[x] & i[y]).bit_count(),
        (o[x] & i[y]).bit_count(),
        (i[x] & o[y]).bit_count(),
    )


def _arcs_within(g: OrientedGraph, mask: int) -> list[tuple[int, int]]:
    return [(u, v) for u in bits(mask) for v in bits(g.out_mask[u] & mask)]


def dominated_arc_pairs(t, x: int) -> PropertyReport:
    """Check: (1) two distinct arcs inside N+(x); (2) two inside N-(x); (3) one inside each."""
    g = _as_graph(t)
    inside_out = _arcs_within(g, g.out_mask[x])
    inside_in = _arcs_within(g, g.in_mask[x])
    parts = {
        "1": inside_out[:2] if len(inside_out) >= 2 else None,
        "2": inside_in[:2] if len(inside_in) >= 2 else None,
        "3": [inside_out[0], inside_in[0]] if inside_out and inside_in else None,
    }
    failing = [k for k, w in parts.items() if w is None]
    return PropertyReport(
        "dominated-arc-pairs",
        not failing,
        {"x": x},
        witness={k: w for k, w in parts.items() if w is not None},
        counterexample={"failing_parts": failing} if failing else None,
        details={"parts": {k: w is not None for k, w in parts.items()}},
    )

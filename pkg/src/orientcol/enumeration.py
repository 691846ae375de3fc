"""Isomorph-free generation of small tournaments, oriented graphs and ocliques.

Every generator grows graphs one vertex at a time from the isomorph-free list of
the previous order and keeps one representative per canonical form. This is
complete because deleting the last vertex of any graph in the class yields a
member of the class one order smaller.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator

from .canon import canonical_labelling, undirected_canonical
from .digraph import OrientedGraph, weak_diameter_at_most_two

MAX_TOURNAMENT_ORDER = 7
# Non-isomorphic tournaments on n = 0..7 vertices.
TOURNAMENT_COUNTS = (1, 1, 1, 2, 4, 12, 56, 456)
# Non-isomorphic oriented graphs on n = 0..6 vertices.
ORIENTED_GRAPH_COUNTS = (1, 1, 2, 7, 42, 582, 21480)


@dataclass(frozen=True)
class TournamentSet:
    order: int
    members: tuple[OrientedGraph, ...]
    forms: tuple[tuple, ...]
    candidates_examined: int

    def __len__(self) -> int:
        return len(self.members)

    def index_of(self, t: OrientedGraph) -> int:
        from .canon import canonical_form

        return self.forms.index(canonical_form(t))


def _relabelled(n: int, arcs, order) -> OrientedGraph:
    position = {v: p for p, v in enumerate(order)}
    return OrientedGraph(n, [(position[u], position[v]) for u, v in arcs])


def _grow(previous: list[OrientedGraph], choices: int, keep=lambda g: True) -> tuple[list[OrientedGraph], int]:
    """Extend every graph by a new last vertex; ``choices`` is 2 (tournament) or 3 (none/out/in)."""
    seen: dict[tuple, OrientedGraph] = {}
    examined = 0
    for g in previous:
        n = g.order
        options = (1, 2) if choices == 2 else (0, 1, 2)
        for pattern in product(options, repeat=n):
            arcs = list(g.arcs)
            for v, kind in enumerate(pattern):
                if kind == 1:
                    arcs.append((n, v))
                elif kind == 2:
                    arcs.append((v, n))
            cand = OrientedGraph(n + 1, arcs)
            examined += 1
            if not keep(cand):
                continue
            form, order = canonical_labelling(cand.order, cand.out_mask, cand.in_mask)
            if form not in seen:
                seen[form] = _relabelled(cand.order, arcs, order)
    forms = sorted(seen)
    return [seen[f] for f in forms], examined


@lru_cache(maxsize=None)
def enumerate_tournaments(n: int) -> TournamentSet:
    """All tournaments on ``n <= 7`` vertices up to isomorphism, in canonical-form order."""
    if not 1 <= n <= MAX_TOURNAMENT_ORDER:
        raise ValueError(f"tournament enumeration supports 1 <= n <= {MAX_TOURNAMENT_ORDER}, got {n}")
    if n == 1:
        members, examined = [OrientedGraph(1)], 1
    else:
        members, examined = _grow(list(enumerate_tournaments(n - 1).members), choices=2)
    if len(members) != TOURNAMENT_COUNTS[n]:
        raise AssertionError(f"generated {len(members)} tournaments on {n} vertices, expected {TOURNAMENT_COUNTS[n]}")
    forms = tuple(canonical_labelling(t.order, t.out_mask, t.in_mask)[0] for t in members)
    return TournamentSet(n, tuple(members), forms, examined)


@lru_cache(maxsize=None)
def enumerate_oriented_graphs(n: int) -> tuple[OrientedGraph, ...]:
    """All oriented graphs on ``n`` vertices up to isomorphism (practical for n <= 6)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return (OrientedGraph(0),)
    if n == 1:
        return (OrientedGraph(1),)
    members, _ = _grow(list(enumerate_oriented_graphs(n - 1)), choices=3)
    if n < len(ORIENTED_GRAPH_COUNTS) and len(members) != ORIENTED_GRAPH_COUNTS[n]:
        raise AssertionError(f"generated {len(members)} oriented graphs on {n} vertices")
    return tuple(members)


@lru_cache(maxsize=None)
def enumerate_oriented_bounded(n: int, delta: int) -> tuple[OrientedGraph, ...]:
    """Oriented graphs on ``n`` vertices with max underlying degree <= delta, up to isomorphism."""
    if n <= 1:
        return (OrientedGraph(n),)
    members, _ = _grow(
        list(enumerate_oriented_bounded(n - 1, delta)),
        choices=3,
        keep=lambda g: g.max_degree() <= delta,
    )
    return tuple(members)


# -- undirected graphs --------------------------------------------------------


@dataclass(frozen=True)
class UndirectedGraph:
    order: int
    edges: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[int]:
        adj = [0] * self.order
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adjacency()]

    def diameter(self) -> float:
        """Underlying diameter (inf if disconnected); 0 for order <= 1."""
        adj = self.adjacency()
        n = self.order
        full = (1 << n) - 1
        worst = 0
        for s in range(n):
            seen = 1 << s
            frontier = seen
            depth = 0
            while seen != full:
                nxt = 0
                v_mask = frontier
                while v_mask:
                    low = v_mask & -v_mask
                    nxt |= adj[low.bit_length() - 1]
                    v_mask ^= low
                frontier = nxt & ~seen
                if not frontier:
                    return float("inf")
                seen |= frontier
                depth += 1
            worst = max(worst, depth)
        return worst


def _undirected_from(n: int, adj: list[int]) -> UndirectedGraph:
    edges = tuple((u, v) for u in range(n) for v in range(u + 1, n) if adj[u] >> v & 1)
    return UndirectedGraph(n, edges)


@lru_cache(maxsize=None)
def enumerate_bounded_degree_graphs(n: int, delta: int) -> tuple[UndirectedGraph, ...]:
    """Simple graphs on ``n`` vertices with max degree <= delta, up to isomorphism."""
    if n <= 1:
        return (UndirectedGraph(n, ()),)
    seen: dict[tuple, UndirectedGraph] = {}
    for g in enumerate_bounded_degree_graphs(n - 1, delta):
        adj = g.adjacency()
        open_slots = [v for v in range(n - 1) if adj[v].bit_count() < delta]
        for k in range(0, min(delta, len(open_slots)) + 1):
            for nbrs in combinations(open_slots, k):
                new = adj + [0]
                for v in nbrs:
                    new[v] |= 1 << (n - 1)
                    new[n - 1] |= 1 << v
                form, order = undirected_canonical(n, new)
                if form in seen:
                    continue
                position = {v: p for p, v in enumerate(order)}
                relabelled = [0] * n
                for v in range(n):
                    for w in range(n):
                        if new[v] >> w & 1:
                            relabelled[position[v]] |= 1 << position[w]
                seen[form] = _undirected_from(n, relabelled)
    return tuple(seen[f] for f in sorted(seen))


def orientations(order: int, edges) -> Iterator[OrientedGraph]:
    """All 2^m orientations; bit i of the index set means edge i is reversed."""
    edges = list(edges)
    for mask in range(1 << len(edges)):
        yield OrientedGraph(order, [(v, u) if mask >> i & 1 else (u, v) for i, (u, v) in enumerate(edges)])


# -- ocliques -------------------------------------------------------------------


@lru_cache(maxsize=None)
def ocliques_of_order(n: int, delta: int, proper: bool) -> tuple[OrientedGraph, ...]:
    found: dict[tuple, OrientedGraph] = {}
    for u in enumerate_bounded_degree_graphs(n, delta):
        degs = u.degrees()
        if proper and n > 0 and min(degs) >= delta:
            continue
        if n > 1 and u.diameter() > 2:
            continue
        for g in orientations(n, u.edges):
            if not weak_diameter_at_most_two(g):
                continue
            form, order = canonical_labelling(g.order, g.out_mask, g.in_mask)
            if form not in found:
                found[form] = _relabelled(g.order, g.arcs, order)
    return tuple(found[f] for f in sorted(found))


def enumerate_subcubic_ocliques(max_order: int, proper: bool = True) -> list[OrientedGraph]:
    """Ocliques with max degree <= 3 on 1..max_order vertices, up to isomorphism.

    With ``proper`` (the default) graphs whose underlying graph is 3-regular are
    excluded; only properly subcubic ocliques can occur inside a connected
    properly subcubic graph.
    """
    if not 1 <= max_order <= 7:
        raise ValueError("max_order must lie in 1..7 (no subcubic oclique has more than 7 vertices)")
    out: list[OrientedGraph] = []
    for n in range(1, max_order + 1):
        out.extend(ocliques_of_order(n, 3, proper))
    return out


@dataclass(frozen=True)
class FilterResult:
    survivors: tuple[int, ...]  # indices into the target TournamentSet
    eliminated: dict[int, int]  # target index -> index of first oclique that fails to embed
    total: int

    @property
    def eliminated_count(self) -> int:
        return self.total - len(self.survivors)


def filter_universal_candidates(targets: TournamentSet, ocliques: list[OrientedGraph]) -> FilterResult:
    """Keep the tournaments into which every oclique embeds.

    Any homomorphism from a graph of weak diameter <= 2 is injective, so an
    embedding search decides the homomorphism question exactly.
    """
    from .homomorphism import find_embedding

    # Larger ocliques first: they eliminate sooner.
    order = sorted(range(len(ocliques)), key=lambda i: (-ocliques[i].order, -len(ocliques[i].arcs), i))
    survivors = []
    eliminated = {}
    for ti, t in enumerate(targets.members):
        for oi in order:
            if not find_embedding(ocliques[oi], t).found:
                eliminated[ti] = oi
                break
        else:
            survivors.append(ti)
    return FilterResult(tuple(survivors), eliminated, len(targets.members))

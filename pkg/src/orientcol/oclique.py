"""Oriented cliques: recognition, the order bound and searches.

An oriented graph is an oclique exactly when every two vertices are adjacent
or joined by a 2-dipath, i.e. its weak diameter is at most 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .canon import canonical_labelling
from .digraph import OrientedGraph, bits, farthest_weak_pair, weak_diameter_at_most_two
from .enumeration import UndirectedGraph, enumerate_bounded_degree_graphs, orientations
from .randgraphs import make_rng, random_bounded_graph, random_regular_graph

EXHAUSTIVE_ORDER_LIMIT = 10
ORIENT_EDGE_LIMIT = 24


@dataclass(frozen=True)
class OcliqueVerdict:
    is_oclique: bool
    witness: tuple[int, int] | None = None  # a pair at weak distance >= 3
    distance: float | None = None

    def __bool__(self) -> bool:
        return self.is_oclique


def is_oclique(g: OrientedGraph) -> OcliqueVerdict:
    if weak_diameter_at_most_two(g):
        return OcliqueVerdict(True)
    pair, dist = farthest_weak_pair(g)
    return OcliqueVerdict(False, pair, dist)


def oclique_order_bound(delta: int) -> int:
    """floor(1/2 + (delta + 1)^2 / 2), from counting 2-dipaths."""
    if delta < 1:
        raise ValueError("delta must be positive")
    return (1 + (delta + 1) ** 2) // 2


def two_dipath_count_holds(n: int, degrees) -> bool:
    """(1/2) sum (n - d - 1) <= sum ceil(d/2) floor(d/2).

    Each non-adjacent pair needs a 2-dipath, and a vertex of degree d is the
    middle of at most ceil(d/2) floor(d/2) of them.
    """
    need = sum(n - d - 1 for d in degrees)
    have = sum(((d + 1) // 2) * (d // 2) for d in degrees)
    return need <= 2 * have


@dataclass(frozen=True)
class OcliqueSearchTask:
    delta: int
    order: int
    mode: str = "exhaustive"  # or "random"
    budget: int = 100_000  # random mode: orientation evaluations
    seed: int | None = None

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.delta < 1 or self.order < 1:
            raise ValueError("delta and order must be positive")
        if self.mode == "exhaustive" and self.order > EXHAUSTIVE_ORDER_LIMIT:
            raise ValueError(f"exhaustive search is limited to order <= {EXHAUSTIVE_ORDER_LIMIT}")
        if self.mode == "random" and self.seed is None:
            raise ValueError("random search needs an explicit seed")


@dataclass(frozen=True)
class OcliqueSearchResult:
    task: OcliqueSearchTask
    found: tuple[OrientedGraph, ...]
    exhaustive: bool  # True only when the whole space was covered
    candidates: int  # underlying graphs that passed the filters
    evaluations: int  # orientations examined
    extra: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        t = self.task
        return {
            "delta": t.delta,
            "order": t.order,
            "mode": t.mode,
            "seed": t.seed,
            "budget": t.budget if t.mode == "random" else None,
            "found": len(self.found),
            "exhaustive": self.exhaustive,
            "candidates": self.candidates,
            "evaluations": self.evaluations,
            "ocliques": [sorted(map(list, g.arcs)) for g in self.found],
            **self.extra,
        }


def _relabel_canonical(g: OrientedGraph) -> tuple[tuple, OrientedGraph]:
    form, order = canonical_labelling(g.order, g.out_mask, g.in_mask)
    position = {v: p for p, v in enumerate(order)}
    return form, g.relabel(position)


def candidate_underlying_graphs(n: int, delta: int) -> list[UndirectedGraph]:
    """Graphs with max degree <= delta, diameter <= 2 and passing the 2-dipath count."""
    return [
        u
        for u in enumerate_bounded_degree_graphs(n, delta)
        if (n == 1 or u.diameter() <= 2) and two_dipath_count_holds(n, u.degrees())
    ]


def search_ocliques(task: OcliqueSearchTask) -> OcliqueSearchResult:
    if task.mode == "exhaustive":
        return _exhaustive(task)
    return _random(task)


def _exhaustive(task: OcliqueSearchTask) -> OcliqueSearchResult:
    n = task.order
    cands = candidate_underlying_graphs(n, task.delta)
    found: dict[tuple, OrientedGraph] = {}
    evaluations = 0
    for u in cands:
        for g in orientations(n, u.edges):
            evaluations += 1
            if weak_diameter_at_most_two(g):
                form, canon = _relabel_canonical(g)
                found.setdefault(form, canon)
    return OcliqueSearchResult(task, tuple(found[f] for f in sorted(found)), True, len(cands), evaluations)


def _bad_pairs(n: int, out: list[int], inn: list[int]) -> int:
    full = (1 << n) - 1
    missing = 0
    for x in range(n):
        reach = out[x] | inn[x] | (1 << x)
        for y in bits(out[x]):
            reach |= out[y]
        for y in bits(inn[x]):
            reach |= inn[y]
        missing += (full & ~reach).bit_count()
    return missing // 2


def _random(task: OcliqueSearchTask) -> OcliqueSearchResult:
    """Sample underlying graphs, then orientations improved by greedy edge flips.

    Each sampled orientation is repaired by flipping the edge that most reduces
    the number of pairs at weak distance >= 3, restarting on a plateau. Every
    orientation scored counts against the budget. Failure to find means
    nothing beyond "not found under this budget".
    """
    n, delta = task.order, task.delta
    rng = make_rng(task.seed)
    found: dict[tuple, OrientedGraph] = {}
    evaluations = 0
    graphs = 0
    while evaluations < task.budget and not found:
        if n * delta % 2 == 0 and delta < n:
            edges = random_regular_graph(rng, n, delta)
        else:
            edges = random_bounded_graph(rng, n, delta, extra=4.0)
        graphs += 1
        u = UndirectedGraph(n, tuple(edges))
        evaluations += 1
        if u.diameter() > 2 or not two_dipath_count_holds(n, u.degrees()):
            continue
        flips = [bool(x) for x in rng.integers(0, 2, size=len(edges))]
        while evaluations < task.budget:
            out = [0] * n
            inn = [0] * n
            for (a, b), f in zip(edges, flips):
                if f:
                    a, b = b, a
                out[a] |= 1 << b
                inn[b] |= 1 << a
            current = _bad_pairs(n, out, inn)
            evaluations += 1
            if current == 0:
                g = OrientedGraph(n, [(b, a) if f else (a, b) for (a, b), f in zip(edges, flips)])
                form, canon = _relabel_canonical(g)
                found[form] = canon
                break
            best, best_i = current, None
            for i, (a, b) in enumerate(edges):
                if evaluations >= task.budget:
                    break
                x, y = (b, a) if flips[i] else (a, b)
                out[x] ^= 1 << y
                inn[y] ^= 1 << x
                out[y] |= 1 << x
                inn[x] |= 1 << y
                score = _bad_pairs(n, out, inn)
                evaluations += 1
                out[y] ^= 1 << x
                inn[x] ^= 1 << y
                out[x] |= 1 << y
                inn[y] |= 1 << x
                if score < best:
                    best, best_i = score, i
            if best_i is None:
                break  # plateau: resample
            flips[best_i] = not flips[best_i]
    return OcliqueSearchResult(
        task,
        tuple(found[f] for f in sorted(found)),
        False,
        graphs,
        evaluations,
        extra={"budget_exhausted": evaluations >= task.budget and not found},
    )


def orient_as_oclique(order: int, edges) -> OrientedGraph | None:
    """First orientation (lexicographic, edges sorted, forward before reversed) that is an oclique.

    Depth-first over edges with pruning: a non-adjacent pair is rejected as soon
    as every edge through its common neighbours is oriented and none forms a
    2-dipath between them.
    """
    edges = sorted((min(u, v), max(u, v)) for u, v in edges)
    if len(set(edges)) != len(edges) or any(u == v for u, v in edges):
        raise ValueError("edges must be distinct and loop-free")
    if any(not 0 <= v < order for e in edges for v in e):
        raise ValueError("edge endpoint out of range")
    if len(edges) > ORIENT_EDGE_LIMIT:
        raise ValueError(f"{len(edges)} edges exceed the exhaustive cap of {ORIENT_EDGE_LIMIT}")
    index = {e: i for i, e in enumerate(edges)}
    adj = [0] * order
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    # For each non-adjacent pair: the (edge x-z, edge z-y) options, checked at the last edge they need.
    checks: dict[int, list[tuple[int, int, list[tuple[int, int]]]]] = {}
    for x in range(order):
        for y in range(x + 1, order):
            if adj[x] >> y & 1:
                continue
            mids = bits(adj[x] & adj[y])
            if not mids:
                return None
            opts = [(index[(min(x, z), max(x, z))], index[(min(z, y), max(z, y))]) for z in mids]
            last = max(max(a, b) for a, b in opts)
            checks.setdefault(last, []).append((x, y, opts))
    head = [0] * len(edges)  # 0: u -> v for (u, v) with u < v; 1: reversed

    def arc(i: int) -> tuple[int, int]:
        u, v = edges[i]
        return (v, u) if head[i] else (u, v)

    def pair_ok(x: int, y: int, opts) -> bool:
        for a, b in opts:
            (p, q), (r, s) = arc(a), arc(b)
            # 2-dipath x -> z -> y or y -> z -> x
            if q == r and ((p == x and s == y) or (p == y and s == x)):
                return True
            if s == p and ((r == x and q == y) or (r == y and q == x)):
                return True
        return False

    def rec(i: int) -> bool:
        if i == len(edges):
            return True
        for choice in (0, 1):
            head[i] = choice
            if all(pair_ok(x, y, opts) for x, y, opts in checks.get(i, ())) and rec(i + 1):
                return True
        return False

    if not rec(0):
        return None
    g = OrientedGraph(order, [arc(i) for i in range(len(edges))])
    if not weak_diameter_at_most_two(g):
        raise AssertionError("orientation search accepted a non-oclique")
    return g

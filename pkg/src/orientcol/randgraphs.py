"""Seeded random oriented graphs for property tests and sampling searches.

All randomness comes from numpy's Philox counter-based generator keyed by an
integer seed, so a (seed, arguments) pair always yields the same graph.
"""

from __future__ import annotations

import numpy as np

from .digraph import OrientedGraph, is_connected


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def orient_randomly(rng: np.random.Generator, order: int, edges) -> OrientedGraph:
    edges = list(edges)
    flips = rng.integers(0, 2, size=len(edges))
    return OrientedGraph(order, [(v, u) if f else (u, v) for (u, v), f in zip(edges, flips)])


def random_bounded_graph(rng: np.random.Generator, n: int, delta: int, extra: float = 1.0) -> list[tuple[int, int]]:
    """Connected simple graph with max degree ``delta``: a random tree, then random extra edges.

    ``extra`` scales how many additional edges are attempted (relative to n).
    """
    if n <= 1:
        return []
    deg = [0] * n
    perm = [int(x) for x in rng.permutation(n)]
    edges = set()
    for i in range(1, n):
        open_ = [perm[j] for j in range(i) if deg[perm[j]] < delta]
        u = open_[int(rng.integers(len(open_)))]
        v = perm[i]
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
    for _ in range(int(extra * n * delta)):
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v or deg[u] >= delta or deg[v] >= delta:
            continue
        e = (min(u, v), max(u, v))
        if e in edges:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return sorted(edges)


def random_connected_orientation(rng: np.random.Generator, n: int, delta: int, extra: float = 1.0) -> OrientedGraph:
    return orient_randomly(rng, n, random_bounded_graph(rng, n, delta, extra))


def random_regular_graph(rng: np.random.Generator, n: int, d: int, attempts: int = 1000) -> list[tuple[int, int]]:
    """Connected simple d-regular graph by the pairing model with rejection."""
    if n * d % 2 or d >= n:
        raise ValueError(f"no {d}-regular graph on {n} vertices")
    for _ in range(attempts):
        points = np.repeat(np.arange(n), d)
        rng.shuffle(points)
        pairs = points.reshape(-1, 2)
        edges = {(int(min(a, b)), int(max(a, b))) for a, b in pairs}
        if len(edges) != len(pairs) or any(a == b for a, b in edges):
            continue
        g = OrientedGraph(n, sorted(edges))
        if is_connected(g):
            return sorted(edges)
    raise RuntimeError("pairing model kept producing multigraphs or disconnected graphs")


def random_cubic_orientation(rng: np.random.Generator, n: int) -> OrientedGraph:
    return orient_randomly(rng, n, random_regular_graph(rng, n, 3))


def random_reducible_instance(
    rng: np.random.Generator, order: int, catalog=None, plant_z: bool = False
) -> OrientedGraph:
    """A properly subcubic graph containing a random R member, padded to ``order`` vertices.

    With ``plant_z`` a random Z member is placed alongside, which makes the
    instance unmappable to QR_7 unless the reduction removes it. Padding
    attaches only to vertices of degree below 3; the result is relabelled randomly.
    """
    from .patterns import load_pattern_catalog

    catalog = catalog or load_pattern_catalog()
    r = catalog.r_family[int(rng.integers(len(catalog.r_family)))].graph
    parts = [r]
    if plant_z:
        parts.append(catalog.z_labelled[int(rng.integers(len(catalog.z_labelled)))].graph)
    base = sum(p.order for p in parts)
    if order < base:
        raise ValueError(f"order {order} is below the planted pattern order {base}")
    n = order
    arcs = []
    deg = []
    for p in parts:
        off = len(deg)
        arcs += [(u + off, v + off) for u, v in p.arcs]
        deg += [p.degree(v) for v in range(p.order)]
    if plant_z:
        # join the two pieces through free slots
        u = next(v for v in range(r.order) if deg[v] < 3)
        w = next(v for v in range(r.order, base) if deg[v] < 3)
        arcs.append((u, w) if rng.integers(2) else (w, u))
        deg[u] += 1
        deg[w] += 1
    deg += [0] * (n - base)
    present = {frozenset(a) for a in arcs}
    for v in range(base, n):
        open_ = [u for u in range(v) if deg[u] < 3]
        u = open_[int(rng.integers(len(open_)))]
        arcs.append((u, v) if rng.integers(2) else (v, u))
        present.add(frozenset((u, v)))
        deg[u] += 1
        deg[v] += 1
    for _ in range(2 * n):
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v or deg[u] >= 3 or deg[v] >= 3 or frozenset((u, v)) in present:
            continue
        # keep at least one vertex below degree 3
        if sum(1 for d in deg if d < 3) <= 2 and deg[u] == 2 and deg[v] == 2:
            continue
        arcs.append((u, v) if rng.integers(2) else (v, u))
        present.add(frozenset((u, v)))
        deg[u] += 1
        deg[v] += 1
    perm = [int(x) for x in rng.permutation(n)]
    return OrientedGraph(n, [(perm[u], perm[v]) for u, v in arcs])

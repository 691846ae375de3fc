"""Canonical forms for small oriented (and undirected) graphs.

The canonical form is the lexicographically least position code over all vertex
orderings that list vertices by their colour-refinement class. Because the
classes and their order are isomorphism invariants, the minimum is too.

The code for an ordering ``w_0, ..., w_{n-1}`` is, for each position ``p``, the
tuple ``(pair(w_0, w_p), ..., pair(w_{p-1}, w_p))`` with
``pair(a, b) = [a -> b] + 2 [b -> a]``. An undirected edge is stored as both arcs.
"""

from __future__ import annotations

from itertools import permutations

from .digraph import OrientedGraph, bits

CanonicalForm = tuple


def _pair_codes(n: int, out_mask) -> list[list[int]]:
    return [[(out_mask[a] >> b & 1) | ((out_mask[b] >> a & 1) << 1) for b in range(n)] for a in range(n)]


def refine(n: int, out_mask, in_mask) -> list[int]:
    """Stable colour refinement; colours are ranks of canonical signatures."""
    colour = [0] * n
    sig = [(out_mask[v].bit_count(), in_mask[v].bit_count()) for v in range(n)]
    ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
    colour = [ranks[s] for s in sig]
    cells = len(ranks)
    while True:
        sig = [
            (
                colour[v],
                tuple(sorted(colour[w] for w in bits(out_mask[v]))),
                tuple(sorted(colour[w] for w in bits(in_mask[v]))),
            )
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        colour = [ranks[s] for s in sig]
        if len(ranks) == cells:
            return colour
        cells = len(ranks)


def canonical_labelling(n: int, out_mask, in_mask) -> tuple[CanonicalForm, list[int]]:
    """Return (form, order) where ``order[p]`` is the vertex placed at position ``p``."""
    if n == 0:
        return (0,), []
    colour = refine(n, out_mask, in_mask)
    slot_colour = sorted(colour)
    code = _pair_codes(n, out_mask)

    best: list[tuple[int, ...]] | None = None
    best_order: list[int] = []
    order: list[int] = []
    prefix: list[tuple[int, ...]] = []
    used = [False] * n

    def search(p: int, tied: bool) -> bool:
        # tied: prefix[:p] equals best[:p]. Returns True if best was replaced below,
        # in which case the caller's prefix now ties the new best.
        nonlocal best, best_order
        if p == n:
            if best is None or not tied:
                best = list(prefix)
                best_order = list(order)
                return True
            return False
        want = slot_colour[p]
        replaced = False
        for v in range(n):
            if used[v] or colour[v] != want:
                continue
            row = tuple(code[w][v] for w in order)
            still_tied = tied
            if best is not None and tied:
                if row > best[p]:
                    continue
                still_tied = row == best[p]
            used[v] = True
            order.append(v)
            prefix.append(row)
            if search(p + 1, still_tied):
                replaced = True
                tied = True
            prefix.pop()
            order.pop()
            used[v] = False
        return replaced

    search(0, True)
    form = (n,) + tuple(x for row in best for x in row)
    return form, best_order


def canonical_form(g: OrientedGraph) -> CanonicalForm:
    return canonical_labelling(g.order, g.out_mask, g.in_mask)[0]


def canonical_graph(g: OrientedGraph) -> OrientedGraph:
    """Relabel ``g`` so vertex ``p`` is the vertex at canonical position ``p``."""
    _, order = canonical_labelling(g.order, g.out_mask, g.in_mask)
    position = {v: p for p, v in enumerate(order)}
    return g.relabel(position)


def brute_force_form(g: OrientedGraph) -> CanonicalForm:
    """Minimum code over all n! orderings; an independent oracle for small n."""
    n = g.order
    if n == 0:
        return (0,)
    code = _pair_codes(n, g.out_mask)
    best = None
    for order in permutations(range(n)):
        flat = tuple(code[order[q]][order[p]] for p in range(n) for q in range(p))
        if best is None or flat < best:
            best = flat
    return (n,) + best


# -- undirected graphs ----------------------------------------------------


def undirected_masks(n: int, edges) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def undirected_canonical(n: int, adj) -> tuple[CanonicalForm, list[int]]:
    return canonical_labelling(n, adj, adj)


def are_isomorphic(g: OrientedGraph, h: OrientedGraph) -> bool:
    return g.order == h.order and len(g.arcs) == len(h.arcs) and canonical_form(g) == canonical_form(h)

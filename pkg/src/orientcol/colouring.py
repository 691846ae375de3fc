"""Constructive oriented colourings for subcubic and subquartic orientations.

Subcubic (connected, max degree 3): map to QR_7 directly if possible; otherwise
peel all sources (or all sinks) onto one extra colour, or delete a single arc
and give its ends two extra colours. At most 9 colours, at most 8 when a
source or sink exists.

Subquartic (max degree 4): properly subquartic components map to QR_67; a
4-regular component that does not map directly loses one arc whose ends get
colours 67 and 68. At most 69 colours.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .digraph import (
    Colouring,
    OrientedGraph,
    components,
    format_certificate,
    is_connected,
    validate_oriented_colouring,
)
from .homomorphism import find_homomorphism
from .paley import paley_tournament

DIRECT_BUDGET = 20_000

METHOD_BOUNDS = {
    "direct-QR7": 7,
    "source-peel": 8,
    "sink-peel": 8,
    "arc-removal-QR7": 9,
    "component-QR67": 67,
    "component-QR67-arc-removal": 69,
}


@lru_cache(maxsize=None)
def _paley(q: int) -> OrientedGraph:
    return paley_tournament(q).graph


@dataclass(frozen=True)
class ColouringCertificate:
    colouring: Colouring
    method: str
    removed_arcs: tuple[tuple[int, int], ...] = ()
    peeled: tuple[int, ...] = ()
    witness: dict[int, int] = field(default_factory=dict)  # homomorphism part, vertex -> Paley vertex

    @property
    def colours_used(self) -> int:
        return self.colouring.colours_used

    @property
    def palette_size(self) -> int:
        return self.colouring.palette_size

    def to_text(self) -> str:
        header = [f"method: {self.method}", f"palette: {self.palette_size}", f"colours-used: {self.colours_used}"]
        if self.removed_arcs:
            header.append("removed-arcs: " + " ".join(f"{u}->{v}" for u, v in self.removed_arcs))
        if self.peeled:
            header.append("peeled: " + " ".join(map(str, self.peeled)))
        return format_certificate(self.colouring.assignment, header)

    def as_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "palette_size": self.palette_size,
            "colours_used": self.colours_used,
            "assignment": list(self.colouring.assignment),
            "removed_arcs": [list(a) for a in self.removed_arcs],
            "peeled": list(self.peeled),
        }


def _finish(g: OrientedGraph, colours: list[int], palette: int, method: str, **extra) -> ColouringCertificate:
    cert = ColouringCertificate(Colouring(tuple(colours), palette), method, **extra)
    report = validate_oriented_colouring(g, cert.colouring)
    if not report.valid:
        raise AssertionError(f"{method} produced an invalid colouring: {report.reason}")
    if palette > METHOD_BOUNDS[method]:
        raise AssertionError(f"{method} exceeded its palette bound")
    return cert


def _has_adjacent_out3_in3(g: OrientedGraph) -> bool:
    return any(
        (g.out_degree(u) == 3 and g.in_degree(v) == 3) or (g.in_degree(u) == 3 and g.out_degree(v) == 3)
        for u, v in g.arcs
    )


def _map_qr7_guaranteed(h: OrientedGraph) -> tuple[int, ...]:
    """Map a graph meeting the no-adjacent-source/sink hypothesis to QR_7 (complete search)."""
    if h.max_degree() > 3 or _has_adjacent_out3_in3(h):
        raise AssertionError("graph does not meet the hypothesis that guarantees a QR_7 map")
    for comp in components(h):
        if all(h.degree(v) == 3 for v in comp):
            raise AssertionError("a cubic component is not covered by the guarantee")
    out = find_homomorphism(h, _paley(7))
    if not out.found:
        raise AssertionError("no QR_7 map for a graph the theory says must have one")
    return out.witness


def colour_subcubic(g: OrientedGraph, node_budget: int | None = DIRECT_BUDGET) -> ColouringCertificate:
    """Oriented colouring of a connected orientation with max degree 3 using at most 9 colours."""
    if g.max_degree() > 3:
        raise ValueError(f"maximum degree {g.max_degree()} exceeds 3")
    if not is_connected(g):
        raise ValueError("input must be connected")
    qr7 = _paley(7)

    direct = find_homomorphism(g, qr7, node_budget=node_budget)
    if direct.found:
        return _finish(g, list(direct.witness), 7, "direct-QR7", witness=dict(enumerate(direct.witness)))

    if g.sources():
        return _peel(g, g, "source-peel")
    if g.sinks():
        return _peel(g, g.converse(), "sink-peel")

    u, v = g.sorted_arcs()[0]
    rest = g.delete_arc(u, v)
    phi = _map_qr7_guaranteed(rest)
    colours = list(phi)
    colours[u], colours[v] = 7, 8
    return _finish(
        g, colours, 9, "arc-removal-QR7", removed_arcs=((u, v),), witness={w: phi[w] for w in range(g.order) if w not in (u, v)}
    )


def _peel(g: OrientedGraph, work: OrientedGraph, method: str) -> ColouringCertificate:
    # work is g (sources) or its converse (sinks). A vertex of out-degree 3 is a
    # source, so work - S has none and the no-adjacent theorem applies.
    peeled = work.sources()
    rest, old = work.delete_vertices(peeled)
    phi = _map_qr7_guaranteed(rest) if rest.order else ()
    colours = [7] * g.order
    for i, v in enumerate(old):
        # x -> -x maps the converse of QR_7 onto QR_7
        colours[v] = phi[i] if work is g else (-phi[i]) % 7
    witness = {v: colours[v] for v in old}
    return _finish(g, colours, 8, method, peeled=tuple(peeled), witness=witness)


# -- subquartic ------------------------------------------------------------------------


def colour_subquartic(g: OrientedGraph, node_budget: int | None = DIRECT_BUDGET) -> ColouringCertificate:
    """Oriented colouring of an orientation with max degree 4 using at most 69 colours."""
    if g.max_degree() > 4:
        raise ValueError(f"maximum degree {g.max_degree()} exceeds 4")
    q = 67
    qr = _paley(q)
    colours = [0] * g.order
    witness: dict[int, int] = {}
    removed: list[tuple[int, int]] = []
    # (in-colours, out-colours) seen around 67 and 68 so far
    profile = {q: (set(), set()), q + 1: (set(), set())}

    for comp in components(g):
        sub, old = g.induced(comp)
        regular = all(sub.degree(v) == 4 for v in range(sub.order))
        out = find_homomorphism(sub, qr, node_budget=node_budget if regular else None)
        if out.found:
            for i, v in enumerate(old):
                colours[v] = witness[v] = out.witness[i]
            continue
        if not regular:
            raise AssertionError("no QR_67 map for a properly subquartic component")
        # every vertex has degree 4, so the least arc will do
        u, v = sub.sorted_arcs()[0]
        cut = sub.delete_arc(u, v)
        got = find_homomorphism(cut, qr)
        if not got.found:
            raise AssertionError("no QR_67 map after removing an arc at a degree-4 vertex")
        phi = _align(cut, got.witness, u, v, profile, q)
        for i, w in enumerate(old):
            colours[w] = witness[w] = phi[i]
        colours[old[u]], colours[old[v]] = q, q + 1
        del witness[old[u]], witness[old[v]]
        removed.append((old[u], old[v]))

    if not removed:
        return _finish(g, colours, q, "component-QR67", witness=witness)
    return _finish(g, colours, q + 2, "component-QR67-arc-removal", removed_arcs=tuple(removed), witness=witness)


def _align(cut: OrientedGraph, phi, u: int, v: int, profile, q: int) -> list[int]:
    """Compose ``phi`` with an automorphism x -> s x + a of QR_q so colours q, q+1 stay consistent.

    Only needed when several components each lose an arc; the first one takes
    the identity.
    """
    res = sorted({x * x % q for x in range(1, q)})
    for s in res:
        for a in range(q):
            mapped = [(s * x + a) % q for x in phi]
            local = {
                q: ({mapped[w] for w in cut.in_neighbours(u)}, {mapped[w] for w in cut.out_neighbours(u)}),
                q + 1: ({mapped[w] for w in cut.in_neighbours(v)}, {mapped[w] for w in cut.out_neighbours(v)}),
            }
            if all(not (local[c][0] & profile[c][1]) and not (local[c][1] & profile[c][0]) for c in local):
                for c in local:
                    profile[c][0].update(local[c][0])
                    profile[c][1].update(local[c][1])
                return mapped
    raise RuntimeError("could not align the 67/68 neighbourhoods across 4-regular components")


# -- bounds ----------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    delta: int
    general: int  # delta^2 2^(delta+1)
    acyclic_route: int | None  # k 2^(k-1), with k = 5 for delta = 4
    improved: int | None
    lower: int | None
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict[str, Any]:
        return {
            "delta": self.delta,
            "general": self.general,
            "acyclic_route": self.acyclic_route,
            "improved": self.improved,
            "lower": self.lower,
            "notes": list(self.notes),
        }


def theoretical_bounds(delta: int) -> BoundReport:
    if delta < 1:
        raise ValueError("delta must be positive")
    general = delta * delta * 2 ** (delta + 1)
    acyclic = improved = lower = None
    notes = []
    if delta == 3:
        improved, lower = 9, 7
        notes.append("7 colours are conjectured to suffice for connected graphs; a 7-vertex oclique shows 7 is needed")
    if delta == 4:
        k = 5
        acyclic = k * 2 ** (k - 1)
        improved, lower = 69, 11
        notes.append("acyclic chromatic number at most 5 gives 5 * 2^4 = 80")
        notes.append("an 11-vertex oclique with max degree 4 gives the lower bound 11")
    return BoundReport(delta, general, acyclic, improved, lower, tuple(notes))

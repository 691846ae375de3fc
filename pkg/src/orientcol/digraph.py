"""Oriented graphs: representation, DGF I/O, structural queries and colouring checks.

Vertices are dense integers ``0..order-1``. Adjacency is kept as out/in
tuples and as integer bit rows (bit ``j`` of ``out_mask[i]`` set iff ``i -> j``).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

INF = math.inf


class GraphFormatError(ValueError):
    """Malformed DGF or certificate text. ``line`` is 1-based, or None."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvalidGraphError(ValueError):
    pass


@dataclass(frozen=True)
class OrientedGraph:
    order: int
    arcs: frozenset[tuple[int, int]]
    out_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, order: int, arcs: Iterable[tuple[int, int]] = ()):
        if order < 0:
            raise InvalidGraphError("order must be non-negative")
        arcset = frozenset((int(u), int(v)) for u, v in arcs)
        out = [0] * order
        inn = [0] * order
        for u, v in arcset:
            if not (0 <= u < order and 0 <= v < order):
                raise InvalidGraphError(f"arc ({u}, {v}) out of range for order {order}")
            if u == v:
                raise InvalidGraphError(f"loop at vertex {u}")
            if (v, u) in arcset:
                raise InvalidGraphError(f"2-cycle between {u} and {v}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "arcs", arcset)
        object.__setattr__(self, "out_mask", tuple(out))
        object.__setattr__(self, "in_mask", tuple(inn))

    # -- basic queries -------------------------------------------------

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_mask[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.out_mask[u] | self.in_mask[u]) >> v & 1)

    def out_neighbours(self, v: int) -> list[int]:
        return bits(self.out_mask[v])

    def in_neighbours(self, v: int) -> list[int]:
        return bits(self.in_mask[v])

    def neighbours(self, v: int) -> list[int]:
        return bits(self.out_mask[v] | self.in_mask[v])

    def out_degree(self, v: int) -> int:
        return self.out_mask[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_mask[v].bit_count()

    def degree(self, v: int) -> int:
        return (self.out_mask[v] | self.in_mask[v]).bit_count()

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.order)), default=0)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def sources(self) -> list[int]:
        return [v for v in range(self.order) if not self.in_mask[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.order) if not self.out_mask[v]]

    def is_tournament(self) -> bool:
        return len(self.arcs) == self.order * (self.order - 1) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Underlying edges as sorted ``(min, max)`` pairs."""
        return sorted((min(u, v), max(u, v)) for u, v in self.arcs)

    # -- constructions -------------------------------------------------

    def converse(self) -> OrientedGraph:
        return converse(self)

    def induced(self, keep: Iterable[int]) -> tuple[OrientedGraph, list[int]]:
        """Induced subgraph on ``keep`` relabelled densely; returns (graph, old labels)."""
        old = sorted(set(keep))
        new_of = {v: i for i, v in enumerate(old)}
        arcs = [(new_of[u], new_of[v]) for u, v in self.arcs if u in new_of and v in new_of]
        return OrientedGraph(len(old), arcs), old

    def delete_vertices(self, drop: Iterable[int]) -> tuple[OrientedGraph, list[int]]:
        dropped = set(drop)
        return self.induced(v for v in range(self.order) if v not in dropped)

    def delete_arc(self, u: int, v: int) -> OrientedGraph:
        if (u, v) not in self.arcs:
            raise InvalidGraphError(f"arc ({u}, {v}) not present")
        return OrientedGraph(self.order, self.arcs - {(u, v)})

    def relabel(self, perm: Mapping[int, int] | list[int]) -> OrientedGraph:
        """Apply the vertex map ``v -> perm[v]`` (must be a bijection onto range(order))."""
        return OrientedGraph(self.order, ((perm[u], perm[v]) for u, v in self.arcs))

    def __repr__(self) -> str:
        return f"OrientedGraph({self.order}, {self.sorted_arcs()})"


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def converse(g: OrientedGraph) -> OrientedGraph:
    return OrientedGraph(g.order, ((v, u) for u, v in g.arcs))


def disjoint_union(*graphs: OrientedGraph) -> OrientedGraph:
    arcs = []
    offset = 0
    for g in graphs:
        arcs.extend((u + offset, v + offset) for u, v in g.arcs)
        offset += g.order
    return OrientedGraph(offset, arcs)


# -- common small graphs ------------------------------------------------


def directed_path(n: int) -> OrientedGraph:
    return OrientedGraph(n, [(i, i + 1) for i in range(n - 1)])


def directed_cycle(n: int) -> OrientedGraph:
    return OrientedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> OrientedGraph:
    return OrientedGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def bipartite_clique_example(n: int) -> OrientedGraph:
    """Orientation of K_{n,n} in which every pair is joined by a dipath of length <= 2.

    Vertices ``0..n-1`` are x_1..x_n and ``n..2n-1`` are y_1..y_n; arcs x_i -> y_j
    for i <= j and y_j -> x_i for j < i.
    """
    arcs = []
    for i in range(n):
        for j in range(n):
            arcs.append((i, n + j) if i <= j else (n + j, i))
    return OrientedGraph(2 * n, arcs)


# -- DGF text format ----------------------------------------------------


def _content_lines(text: str) -> list[tuple[int, str]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    return rows


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(f"{what} {token!r} is not an integer", lineno) from None
    if value < 0:
        raise GraphFormatError(f"{what} {token!r} is negative", lineno)
    return value


def parse_dgf(text: str) -> OrientedGraph:
    """Parse DGF: ``<order> <arc-count>`` then one ``<tail> <head>`` line per arc."""
    g, _ = _parse_dgf_rows(_content_lines(text), allow_undirected=False)
    return g


def parse_undirected_dgf(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse DGF carrying the ``undirected`` header flag into ``(order, edges)``.

    Each edge is listed once; a plain (unflagged) DGF is read as its underlying edges.
    """
    g, undirected = _parse_dgf_rows(_content_lines(text), allow_undirected=True)
    if undirected:
        return undirected
    return g.order, g.edges()


def _parse_dgf_rows(rows, allow_undirected: bool):
    if not rows:
        raise GraphFormatError("missing header", None)
    lineno, header = rows[0]
    parts = header.split()
    undirected = False
    if allow_undirected and len(parts) == 3 and parts[2] == "undirected":
        undirected = True
        parts = parts[:2]
    if len(parts) != 2:
        raise GraphFormatError(f"malformed header {header!r}", lineno)
    order = _parse_int(parts[0], lineno, "order")
    count = _parse_int(parts[1], lineno, "arc count")
    body = rows[1:]
    if len(body) != count:
        where = body[count][0] if len(body) > count else (body[-1][0] if body else lineno)
        raise GraphFormatError(f"expected {count} arc lines, found {len(body)}", where)
    seen: dict[tuple[int, int], int] = {}
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"malformed arc line {line!r}", lineno)
        u = _parse_int(parts[0], lineno, "vertex")
        v = _parse_int(parts[1], lineno, "vertex")
        if u >= order or v >= order:
            raise GraphFormatError(f"vertex index out of range in {line!r} (order {order})", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate arc {u} {v} (first on line {seen[(u, v)]})", lineno)
        if (v, u) in seen:
            kind = "duplicate edge" if undirected else "2-cycle"
            raise GraphFormatError(f"{kind} {u} {v} (reverse on line {seen[(v, u)]})", lineno)
        seen[(u, v)] = lineno
    if undirected:
        return None, (order, sorted((min(u, v), max(u, v)) for u, v in seen))
    return OrientedGraph(order, seen), False


def format_dgf(g: OrientedGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.order} {len(g.arcs)}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_arcs())
    return "\n".join(lines) + "\n"


def format_undirected_dgf(order: int, edges: Iterable[tuple[int, int]]) -> str:
    edges = sorted((min(u, v), max(u, v)) for u, v in edges)
    lines = [f"{order} {len(edges)} undirected"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


# -- colourings ---------------------------------------------------------


@dataclass(frozen=True)
class Colouring:
    assignment: tuple[int, ...]
    palette_size: int

    def __post_init__(self):
        if any(c < 0 for c in self.assignment):
            raise ValueError("colours must be non-negative")
        if self.assignment and self.palette_size < max(self.assignment) + 1:
            raise ValueError("palette_size smaller than the largest colour used")

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], order: int, palette_size: int | None = None) -> Colouring:
        missing = [v for v in range(order) if v not in mapping]
        if missing:
            raise ValueError(f"no colour for vertex {missing[0]}")
        assignment = tuple(mapping[v] for v in range(order))
        if palette_size is None:
            palette_size = max(assignment, default=-1) + 1
        return cls(assignment, palette_size)

    @property
    def colours_used(self) -> int:
        return len(set(self.assignment))

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    condition: int | None = None  # 1 or 2 when invalid
    arcs: tuple[tuple[int, int], ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


def validate_oriented_colouring(g: OrientedGraph, c: Colouring | Mapping[int, int] | list[int]) -> ValidityReport:
    """Check both oriented-colouring conditions; report the first violating arc(s).

    Arcs are scanned in sorted order, so the reported violation is deterministic.
    """
    colour = c.assignment if isinstance(c, Colouring) else c
    for v in range(g.order):
        try:
            colour[v]
        except (KeyError, IndexError):
            raise ValueError(f"colouring has no colour for vertex {v}") from None
    realised: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in g.sorted_arcs():
        cu, cv = colour[u], colour[v]
        if cu == cv:
            return ValidityReport(False, 1, ((u, v),), f"adjacent vertices {u}, {v} share colour {cu}")
        back = realised.get((cv, cu))
        if back is not None:
            return ValidityReport(
                False, 2, (back, (u, v)),
                f"colour pair {cu}->{cv} realised by arc {u}->{v} and reversed by arc {back[0]}->{back[1]}",
            )
        realised.setdefault((cu, cv), (u, v))
    return ValidityReport(True)


def format_certificate(assignment: Iterable[int], header: Iterable[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.extend(f"{v} {c}" for v, c in enumerate(assignment))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> tuple[dict[int, int], dict[str, str]]:
    """Parse ``<vertex> <colour>`` lines; ``# key: value`` comment lines become metadata."""
    mapping: dict[int, int] = {}
    meta: dict[str, str] = {}
    last = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"malformed certificate line {line!r}", lineno)
        v = _parse_int(parts[0], lineno, "vertex")
        col = _parse_int(parts[1], lineno, "colour")
        if v in mapping:
            raise GraphFormatError(f"vertex {v} coloured twice", lineno)
        if v < last:
            raise GraphFormatError("certificate lines not sorted by vertex", lineno)
        last = v
        mapping[v] = col
    return mapping, meta


# -- distances ----------------------------------------------------------


def bfs_distances(g: OrientedGraph, source: int) -> list[float]:
    """Directed distances from ``source`` (INF where unreachable)."""
    dist: list[float] = [INF] * g.order
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in bits(g.out_mask[u]):
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


@dataclass(frozen=True)
class VertexPairDistance:
    forward: float
    backward: float

    @property
    def weak(self) -> float:
        return min(self.forward, self.backward)


def all_pairs_distances(g: OrientedGraph) -> list[list[float]]:
    return [bfs_distances(g, v) for v in range(g.order)]


def pair_distance(g: OrientedGraph, x: int, y: int) -> VertexPairDistance:
    return VertexPairDistance(bfs_distances(g, x)[y], bfs_distances(g, y)[x])


def weak_distance_matrix(g: OrientedGraph) -> list[list[float]]:
    d = all_pairs_distances(g)
    return [[min(d[x][y], d[y][x]) for y in range(g.order)] for x in range(g.order)]


def weak_diameter(g: OrientedGraph) -> float:
    if g.order <= 1:
        return 0
    w = weak_distance_matrix(g)
    return max(w[x][y] for x in range(g.order) for y in range(x + 1, g.order))


def farthest_weak_pair(g: OrientedGraph) -> tuple[tuple[int, int], float] | None:
    """Lexicographically first pair attaining the weak diameter."""
    if g.order <= 1:
        return None
    w = weak_distance_matrix(g)
    best, best_pair = -1.0, (0, 1)
    for x in range(g.order):
        for y in range(x + 1, g.order):
            if w[x][y] > best:
                best, best_pair = w[x][y], (x, y)
    return best_pair, best


def weak_diameter_at_most_two(g: OrientedGraph) -> bool:
    """Fast bitset test: every pair adjacent or joined by a 2-dipath."""
    full = (1 << g.order) - 1
    out, inn = g.out_mask, g.in_mask
    for x in range(g.order):
        reach = out[x] | inn[x] | (1 << x)
        for y in bits(out[x]):
            reach |= out[y]
        for y in bits(inn[x]):
            reach |= inn[y]
        if reach != full:
            return False
    return True


# -- underlying-graph structure -------------------------------------------


def components(g: OrientedGraph) -> list[list[int]]:
    seen = 0
    comps = []
    for start in range(g.order):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.out_mask[v] | g.in_mask[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(bits(comp))
    return comps


def is_connected(g: OrientedGraph) -> bool:
    return g.order <= 1 or len(components(g)) == 1


def cut_edges(g: OrientedGraph) -> list[tuple[int, int]]:
    """Bridges of the underlying graph, as sorted ``(min, max)`` pairs."""
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.arcs)
    return sorted((min(u, v), max(u, v)) for u, v in nx.bridges(h))


def is_properly_bounded(g: OrientedGraph, delta: int) -> bool:
    """Max degree <= delta and some vertex has degree < delta."""
    degs = [g.degree(v) for v in range(g.order)]
    return bool(degs) and max(degs) <= delta and min(degs) < delta


def is_properly_subcubic(g: OrientedGraph) -> bool:
    return is_properly_bounded(g, 3)


def is_properly_subquartic(g: OrientedGraph) -> bool:
    return is_properly_bounded(g, 4)


@dataclass(frozen=True)
class StructureReport:
    in_degree: tuple[int, ...]
    out_degree: tuple[int, ...]
    degree: tuple[int, ...]
    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    max_degree: int
    connected: bool
    cut_edges: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        return {
            "in_degree": list(self.in_degree),
            "out_degree": list(self.out_degree),
            "degree": list(self.degree),
            "sources": list(self.sources),
            "sinks": list(self.sinks),
            "max_degree": self.max_degree,
            "connected": self.connected,
            "cut_edges": [list(e) for e in self.cut_edges],
        }


def structural_queries(g: OrientedGraph) -> StructureReport:
    n = range(g.order)
    return StructureReport(
        in_degree=tuple(g.in_degree(v) for v in n),
        out_degree=tuple(g.out_degree(v) for v in n),
        degree=tuple(g.degree(v) for v in n),
        sources=tuple(g.sources()),
        sinks=tuple(g.sinks()),
        max_degree=g.max_degree(),
        connected=is_connected(g),
        cut_edges=tuple(cut_edges(g)),
    )

"""Complete backtracking search for oriented-graph homomorphisms.

Domains are integer bitsets over the target's vertices. Every assignment is
followed by arc-consistency propagation. The next variable minimises domain
size divided by its conflict weight (dom/wdeg): a vertex's weight grows each time
propagation wipes out its domain or a neighbour's, which pulls the search
towards the part of the graph that cannot be mapped. Ties go to the smallest
index, so runs are deterministic. An ``exhausted`` verdict is a proof that no
homomorphism exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .digraph import OrientedGraph, bits, components


class BudgetExceeded(Exception):
    pass


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0

    def add(self, other: SearchStats) -> None:
        self.nodes += other.nodes
        self.prunes += other.prunes


@dataclass(frozen=True)
class SolverOutcome:
    verdict: str  # "found", "exhausted" or "budget"
    witness: tuple[int, ...] | None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def found(self) -> bool:
        return self.verdict == "found"

    @property
    def exhausted(self) -> bool:
        return self.verdict == "exhausted"

    def __bool__(self) -> bool:
        return self.found


def is_homomorphism(g: OrientedGraph, h: OrientedGraph, phi) -> bool:
    if len(phi) != g.order:
        return False
    if any(not (0 <= phi[v] < h.order) for v in range(g.order)):
        return False
    return all(h.has_arc(phi[u], phi[v]) for u, v in g.arcs)


def check_partial_map(g: OrientedGraph, h: OrientedGraph, partial: Mapping[int, int]) -> None:
    """Raise ValueError unless ``partial`` respects every arc between assigned vertices."""
    for v, a in partial.items():
        if not (0 <= v < g.order and 0 <= a < h.order):
            raise ValueError(f"partial map entry {v} -> {a} out of range")
    for u, v in g.sorted_arcs():
        if u in partial and v in partial and not h.has_arc(partial[u], partial[v]):
            raise ValueError(f"partial map sends arc {u}->{v} to non-arc {partial[u]}->{partial[v]}")


class _Search:
    def __init__(self, g: OrientedGraph, h: OrientedGraph, injective: bool, budget: int | None):
        self.g = g
        self.h = h
        self.injective = injective
        self.budget = budget
        self.stats = SearchStats()
        self.full = (1 << h.order) - 1
        self.out_nb = [g.out_neighbours(v) for v in range(g.order)]
        self.in_nb = [g.in_neighbours(v) for v in range(g.order)]
        self._out_cache: dict[int, int] = {}
        self._in_cache: dict[int, int] = {}
        self.weight = [1] * g.order

    def _wipeout(self, x: int, y: int) -> bool:
        self.weight[x] += 1
        self.weight[y] += 1
        return False

    def _image_out(self, mask: int) -> int:
        got = self._out_cache.get(mask)
        if got is None:
            got = 0
            for a in bits(mask):
                got |= self.h.out_mask[a]
            self._out_cache[mask] = got
        return got

    def _image_in(self, mask: int) -> int:
        got = self._in_cache.get(mask)
        if got is None:
            got = 0
            for a in bits(mask):
                got |= self.h.in_mask[a]
            self._in_cache[mask] = got
        return got

    def propagate(self, dom: list[int], queue: list[int], fixed: set[int]) -> bool:
        """Arc consistency (plus singleton all-different when injective); False on wipeout."""
        pending = set(queue)
        while queue:
            x = queue.pop()
            pending.discard(x)
            dx = dom[x]
            if self.injective and dx & (dx - 1) == 0 and x not in fixed:
                fixed.add(x)
                for y in range(len(dom)):
                    if y != x and dom[y] & dx:
                        dom[y] &= ~dx
                        if not dom[y]:
                            return self._wipeout(x, y)
                        if y not in pending:
                            pending.add(y)
                            queue.append(y)
            reach_out = self._image_out(dx)
            for y in self.out_nb[x]:
                new = dom[y] & reach_out
                if new != dom[y]:
                    if not new:
                        return self._wipeout(x, y)
                    dom[y] = new
                    if y not in pending:
                        pending.add(y)
                        queue.append(y)
            reach_in = self._image_in(dx)
            for y in self.in_nb[x]:
                new = dom[y] & reach_in
                if new != dom[y]:
                    if not new:
                        return self._wipeout(x, y)
                    dom[y] = new
                    if y not in pending:
                        pending.add(y)
                        queue.append(y)
        return True

    def run(self, dom: list[int]) -> list[int] | None:
        fixed: set[int] = set()
        if not all(dom):
            self.stats.prunes += 1
            return None
        if not self.propagate(dom, list(range(len(dom))), fixed):
            self.stats.prunes += 1
            return None
        return self._dfs(dom, [False] * len(dom), fixed)

    def _dfs(self, dom: list[int], assigned: list[bool], fixed: set[int]) -> list[int] | None:
        pick, best_size, best_w = -1, 0, 1
        weight = self.weight
        for v, d in enumerate(dom):
            if assigned[v]:
                continue
            size = d.bit_count()
            if size == 1:
                pick = v
                break
            # size / weight < best_size / best_w
            if pick < 0 or size * best_w < best_size * weight[v]:
                pick, best_size, best_w = v, size, weight[v]
        if pick < 0:
            return [d.bit_length() - 1 for d in dom]
        assigned[pick] = True
        for a in bits(dom[pick]):
            self.stats.nodes += 1
            if self.budget is not None and self.stats.nodes > self.budget:
                raise BudgetExceeded
            trial = list(dom)
            trial[pick] = 1 << a
            trial_fixed = set(fixed)
            if self.propagate(trial, [pick], trial_fixed):
                found = self._dfs(trial, assigned, trial_fixed)
                if found is not None:
                    return found
            else:
                self.stats.prunes += 1
        assigned[pick] = False
        return None


def find_homomorphism(
    g: OrientedGraph,
    h: OrientedGraph,
    seed: Mapping[int, int] | None = None,
    *,
    injective: bool = False,
    fix_first_vertex: bool = False,
    node_budget: int | None = None,
    candidates: Mapping[int, int] | None = None,
) -> SolverOutcome:
    """Search for a homomorphism ``g -> h`` extending ``seed``.

    ``fix_first_vertex`` pins vertex 0 of each component of ``g`` to target vertex 0;
    it is only sound when ``h`` is vertex-transitive, which the caller asserts.
    ``candidates`` optionally restricts a vertex to a bitset of target vertices.
    Non-injective searches solve each underlying component of ``g`` independently.
    """
    seed = dict(seed or {})
    check_partial_map(g, h, seed)
    if fix_first_vertex and seed:
        raise ValueError("fix_first_vertex cannot be combined with a seed map")
    full = (1 << h.order) - 1
    dom = [full] * g.order
    for v, mask in (candidates or {}).items():
        dom[v] &= mask
    for v, a in seed.items():
        dom[v] &= 1 << a

    stats = SearchStats()
    if g.order == 0:
        return SolverOutcome("found", (), stats)
    if h.order == 0:
        return SolverOutcome("exhausted", None, stats)

    parts = [list(range(g.order))] if injective else components(g)
    witness = [0] * g.order
    for part in parts:
        sub, old = g.induced(part) if len(parts) > 1 else (g, part)
        sub_dom = [dom[v] for v in old]
        if fix_first_vertex:
            sub_dom[0] &= 1
        remaining = None if node_budget is None else node_budget - stats.nodes
        search = _Search(sub, h, injective, remaining)
        try:
            found = search.run(sub_dom)
        except BudgetExceeded:
            stats.add(search.stats)
            return SolverOutcome("budget", None, stats)
        stats.add(search.stats)
        if found is None:
            return SolverOutcome("exhausted", None, stats)
        for i, v in enumerate(old):
            witness[v] = found[i]

    result = tuple(witness)
    if not is_homomorphism(g, h, result):
        raise AssertionError("solver produced a map that is not a homomorphism")
    if injective and len(set(result)) != len(result):
        raise AssertionError("solver produced a non-injective embedding")
    for v, a in seed.items():
        if result[v] != a:
            raise AssertionError("solver witness disagrees with the seed map")
    return SolverOutcome("found", result, stats)


def maps_to(g: OrientedGraph, h: OrientedGraph, **kwargs) -> bool:
    return find_homomorphism(g, h, **kwargs).found


def find_embedding(g: OrientedGraph, h: OrientedGraph, **kwargs) -> SolverOutcome:
    """Injective arc-preserving map (subgraph isomorphism, not necessarily induced)."""
    return find_homomorphism(g, h, injective=True, **kwargs)


@dataclass(frozen=True)
class ChromaticResult:
    value: int | None  # None means "exceeds k_max"
    k_max: int
    tournament: OrientedGraph | None = None
    witness: tuple[int, ...] | None = None

    @property
    def exceeds(self) -> bool:
        return self.value is None


def oriented_chromatic_number(g: OrientedGraph, k_max: int = 7) -> ChromaticResult:
    """Least k such that ``g`` maps to some k-vertex tournament, trying k = 1..k_max."""
    from .enumeration import MAX_TOURNAMENT_ORDER, enumerate_tournaments

    if not 1 <= k_max <= MAX_TOURNAMENT_ORDER:
        raise ValueError(f"k_max must lie in 1..{MAX_TOURNAMENT_ORDER}")
    if g.order == 0:
        return ChromaticResult(0, k_max)
    for k in range(1, k_max + 1):
        for t in enumerate_tournaments(k).members:
            out = find_homomorphism(g, t)
            if out.found:
                return ChromaticResult(k, k_max, t, out.witness)
    return ChromaticResult(None, k_max)

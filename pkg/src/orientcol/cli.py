"""Command-line entry point.

Exit status: 0 affirmative result, 1 well-formed negative (or undecided) result,
2 usage or input error. The first line of output is always a replay line with
the normalised invocation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .digraph import (
    GraphFormatError,
    InvalidGraphError,
    OrientedGraph,
    format_certificate,
    format_dgf,
    parse_certificate,
    parse_dgf,
    parse_undirected_dgf,
    validate_oriented_colouring,
)

PROG = "orientcol"


class UsageError(Exception):
    pass


@dataclass
class Report:
    status: int = 0
    lines: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    payload: str | None = None  # certificate or graph text, written to --out or stdout

    def say(self, line: str) -> None:
        self.lines.append(line)


# -- input helpers -----------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _graph(path: str) -> OrientedGraph:
    text = _read(path)
    try:
        return parse_dgf(text)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from exc


# -- paley -------------------------------------------------------------------------


def cmd_paley_gen(a) -> Report:
    from .paley import paley_tournament

    t = paley_tournament(a.q)
    r = Report(data={"q": a.q, "arcs": len(t.graph.arcs), "residues": sorted(t.residues)})
    r.say(f"QR_{a.q}: {a.q} vertices, {len(t.graph.arcs)} arcs, residues {sorted(t.residues)}")
    r.payload = format_dgf(t.graph, [f"QR_{a.q}"])
    return r


def cmd_paley_check(a) -> Report:
    from .paley import arc_neighbourhood_profile, check_property_pij, dominated_arc_pairs, paley_tournament, symmetry_report

    t = paley_tournament(a.q)
    r = Report()
    if a.property == "pij":
        if len(a.params) != 2:
            raise UsageError("pij needs two parameters: I J")
        i, j = a.params
        rep = check_property_pij(t, i, j, workers=a.threads)
    elif a.property == "symmetry":
        rep = symmetry_report(t)
    elif a.property == "dominated":
        if len(a.params) != 1:
            raise UsageError("dominated needs one parameter: X")
        rep = dominated_arc_pairs(t, a.params[0] % a.q)
    else:
        profiles = sorted({arc_neighbourhood_profile(t, arc) for arc in t.graph.sorted_arcs()})
        r.data = {"name": "arc-profiles", "profiles": [list(p) for p in profiles], "arcs": len(t.graph.arcs)}
        r.say(f"arc neighbourhood profiles over {len(t.graph.arcs)} arcs: {profiles}")
        r.status = 0 if len(profiles) == 1 else 1
        return r
    r.data = rep.as_dict()
    verdict = {True: "holds", False: "fails", None: "undecided"}[rep.holds]
    r.say(f"{rep.name} on QR_{a.q}: {verdict}")
    if rep.counterexample is not None:
        r.say(f"counterexample: {rep.counterexample}")
    if rep.details:
        r.say(f"details: {rep.details}")
    r.status = 0 if rep.holds else 1
    return r


# -- hom ---------------------------------------------------------------------------


def cmd_hom_solve(a) -> Report:
    from .homomorphism import find_homomorphism

    g, h = _graph(a.source), _graph(a.target)
    out = find_homomorphism(g, h, node_budget=a.budget)
    r = Report(data={"verdict": out.verdict, "nodes": out.stats.nodes, "map": list(out.witness) if out.found else None})
    r.say(f"verdict: {out.verdict} (nodes {out.stats.nodes})")
    if out.found:
        r.payload = format_certificate(out.witness, [f"homomorphism {a.source} -> {a.target}"])
    r.status = 0 if out.found else 1
    return r


def cmd_hom_chi(a) -> Report:
    from .homomorphism import oriented_chromatic_number

    g = _graph(a.graph)
    res = oriented_chromatic_number(g, k_max=a.kmax)
    r = Report(data={"chi": res.value, "kmax": a.kmax})
    if res.value is None:
        r.say(f"chi_o > {a.kmax}")
        r.status = 1
    else:
        r.say(f"chi_o = {res.value}")
        if res.witness is not None:
            r.payload = format_certificate(res.witness, [f"oriented {res.value}-colouring"])
    return r


# -- patterns and reduction ------------------------------------------------------------


def cmd_patterns_find(a) -> Report:
    from .patterns import find_pattern

    g = _graph(a.graph)
    emb = find_pattern(g, a.family)
    r = Report(data={"family": a.family, "embedding": emb.as_dict() if emb else None})
    if emb is None:
        r.say(f"no {a.family}-pattern")
        r.status = 1
    else:
        roles = " ".join(f"{k}={v}" for k, v in emb.role_map.items())
        r.say(f"found {emb.pattern.name}: {roles}")
    return r


def cmd_reduce_once(a) -> Report:
    from .digraph import is_properly_subcubic
    from .patterns import find_pattern, reduce_once

    g = _graph(a.graph)
    if not is_properly_subcubic(g):
        raise UsageError("reduction needs a properly subcubic graph")
    emb = find_pattern(g, "R")
    r = Report()
    if emb is None:
        r.say("graph is reduced: no R-pattern")
        r.data = {"reduced": True, "step": None}
        r.status = 1
        return r
    h, step = reduce_once(g, emb)
    r.data = {"reduced": False, "step": step.as_dict(), "order": h.order}
    r.say(f"applied {emb.pattern.name}; deleted {list(step.deleted)}; new vertex r = {step.new_vertex}; order {g.order} -> {h.order}")
    r.payload = format_dgf(h)
    return r


def cmd_reduce_full(a) -> Report:
    from .digraph import is_properly_subcubic
    from .patterns import reduce_fully

    g = _graph(a.graph)
    if not is_properly_subcubic(g):
        raise UsageError("reduction needs a properly subcubic graph")
    h, steps = reduce_fully(g)
    r = Report(data={"steps": [s.as_dict() for s in steps], "order": h.order})
    for k, s in enumerate(steps, 1):
        r.say(f"step {k}: {s.embedding.pattern.name}, deleted {list(s.deleted)}")
    r.say(f"{len(steps)} step(s); order {g.order} -> {h.order}")
    r.payload = format_dgf(h)
    return r


# -- colouring ---------------------------------------------------------------------


def _cmd_colour(a, fn) -> Report:
    g = _graph(a.graph)
    try:
        cert = fn(g) if a.budget is None else fn(g, node_budget=a.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    r = Report(data=cert.as_dict())
    r.say(f"method: {cert.method}; palette {cert.palette_size}; colours used {cert.colours_used}")
    r.payload = cert.to_text()
    return r


def cmd_colour_subcubic(a) -> Report:
    from .colouring import colour_subcubic

    return _cmd_colour(a, colour_subcubic)


def cmd_colour_subquartic(a) -> Report:
    from .colouring import colour_subquartic

    return _cmd_colour(a, colour_subquartic)


def cmd_colour_bounds(a) -> Report:
    from .colouring import theoretical_bounds

    b = theoretical_bounds(a.delta)
    r = Report(data=b.as_dict())
    r.say(f"delta {b.delta}: general {b.general}")
    if b.acyclic_route is not None:
        r.say(f"acyclic route: {b.acyclic_route}")
    if b.improved is not None:
        r.say(f"improved upper bound: {b.improved}")
    if b.lower is not None:
        r.say(f"lower bound: {b.lower}")
    for note in b.notes:
        r.say(f"note: {note}")
    return r


# -- ocliques ----------------------------------------------------------------------


def cmd_oclique_check(a) -> Report:
    from .oclique import is_oclique

    v = is_oclique(_graph(a.graph))
    r = Report(data={"oclique": v.is_oclique, "witness": list(v.witness) if v.witness else None, "distance": v.distance})
    if v:
        r.say("oclique: weak diameter <= 2")
    else:
        r.say(f"not an oclique: pair {v.witness} at weak distance {v.distance}")
        r.status = 1
    return r


def cmd_oclique_bound(a) -> Report:
    from .oclique import oclique_order_bound

    b = oclique_order_bound(a.delta)
    r = Report(data={"delta": a.delta, "bound": b})
    r.say(f"max oclique order with delta {a.delta}: <= {b}")
    return r


def cmd_oclique_search(a) -> Report:
    from .oclique import OcliqueSearchTask, search_ocliques

    if a.mode == "random" and a.seed is None:
        raise UsageError("random search requires --seed")
    try:
        task = OcliqueSearchTask(a.delta, a.order, a.mode, a.budget if a.budget is not None else 100_000, a.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = search_ocliques(task)
    r = Report(data=res.as_dict())
    scope = "exhaustive" if res.exhaustive else f"random, seed {a.seed}, budget {task.budget}"
    r.say(f"{len(res.found)} oclique(s) of order {a.order} with delta <= {a.delta} ({scope})")
    r.say(f"candidate underlying graphs: {res.candidates}; orientations evaluated: {res.evaluations}")
    if not res.found and not res.exhaustive:
        r.say("none found under this budget; this is not a proof of non-existence")
    r.payload = "".join(format_dgf(g, [f"oclique {i}"]) for i, g in enumerate(res.found)) or None
    r.status = 0 if res.found else 1
    return r


def cmd_oclique_orient(a) -> Report:
    from .oclique import orient_as_oclique

    text = _read(a.graph)
    try:
        order, edges = parse_undirected_dgf(text)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{a.graph}: {exc}") from exc
    try:
        g = orient_as_oclique(order, edges)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    r = Report(data={"found": g is not None, "arcs": g.sorted_arcs() if g else None})
    if g is None:
        r.say("no orientation is an oclique")
        r.status = 1
    else:
        r.say("oclique orientation found")
        r.payload = format_dgf(g)
    return r


# -- tournaments -------------------------------------------------------------------


def cmd_tourn_enum(a) -> Report:
    from .enumeration import enumerate_tournaments

    try:
        ts = enumerate_tournaments(a.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    r = Report(data={"order": a.n, "count": len(ts), "candidates_examined": ts.candidates_examined})
    r.say(f"{len(ts)} tournaments on {a.n} vertices")
    r.payload = "".join(format_dgf(t, [f"index: {i}"]) for i, t in enumerate(ts.members))
    return r


def cmd_tourn_ocliques(a) -> Report:
    from .enumeration import enumerate_subcubic_ocliques

    try:
        cl = enumerate_subcubic_ocliques(a.max_order, proper=not a.include_cubic)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    by_order: dict[int, int] = {}
    for g in cl:
        by_order[g.order] = by_order.get(g.order, 0) + 1
    r = Report(data={"count": len(cl), "by_order": by_order})
    r.say(f"{len(cl)} subcubic ocliques; by order {by_order}")
    r.payload = "".join(format_dgf(g, [f"index: {i}"]) for i, g in enumerate(cl))
    return r


def cmd_tourn_filter(a) -> Report:
    from .enumeration import enumerate_subcubic_ocliques, enumerate_tournaments, filter_universal_candidates

    ts = enumerate_tournaments(7)
    cl = enumerate_subcubic_ocliques(7, proper=not a.include_cubic)
    res = filter_universal_candidates(ts, cl)
    r = Report(data={"eliminated": res.eliminated_count, "survivors": list(res.survivors), "ocliques": len(cl)})
    r.say(f"eliminated {res.eliminated_count} of {res.total}; {len(res.survivors)} survivors; {len(cl)} ocliques used")
    r.payload = "".join(format_dgf(ts.members[i], [f"index: {i}"]) for i in res.survivors)
    return r


# -- verify ------------------------------------------------------------------------


def cmd_verify(a) -> Report:
    g = _graph(a.graph)
    try:
        mapping, meta = parse_certificate(_read(a.certificate))
    except GraphFormatError as exc:
        raise GraphFormatError(f"{a.certificate}: {exc}") from exc
    missing = [v for v in range(g.order) if v not in mapping]
    extra = sorted(v for v in mapping if not 0 <= v < g.order)
    r = Report()
    if missing or extra:
        r.say(f"invalid: certificate misses vertices {missing} or names unknown vertices {extra}")
        r.data = {"valid": False, "missing": missing, "unknown": extra}
        r.status = 1
        return r
    rep = validate_oriented_colouring(g, [mapping[v] for v in range(g.order)])
    colours = len(set(mapping.values()))
    r.data = {"valid": rep.valid, "colours": colours, "condition": rep.condition, "reason": rep.reason, "meta": meta}
    if rep.valid:
        r.say(f"valid oriented colouring with {colours} colours")
    else:
        r.say(f"invalid: {rep.reason}")
        r.status = 1
    return r


# -- parser ------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, metavar="U64")
    p.add_argument("--budget", type=int, metavar="U64")
    p.add_argument("--threads", type=int, default=1, metavar="N")
    p.add_argument("--kmax", type=int, default=7, metavar="K")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog=PROG, description="Oriented colouring toolkit")
    groups = parser.add_subparsers(dest="group", required=True)

    def group(name: str, help_: str):
        sp = groups.add_parser(name, help=help_)
        return sp.add_subparsers(dest="action", required=True)

    def action(sub, name: str, fn: Callable, help_: str):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn, sub=p)
        return p

    g = group("paley", "Paley tournaments")
    action(g, "gen", cmd_paley_gen, "write QR_q").add_argument("q", type=int)
    p = action(g, "check", cmd_paley_check, "check a property of QR_q")
    p.add_argument("q", type=int)
    p.add_argument("property", choices=["pij", "symmetry", "profile", "dominated"])
    p.add_argument("params", type=int, nargs="*")

    g = group("hom", "homomorphisms")
    p = action(g, "solve", cmd_hom_solve, "search for a homomorphism G -> H")
    p.add_argument("source")
    p.add_argument("target")
    action(g, "chi", cmd_hom_chi, "oriented chromatic number up to --kmax").add_argument("graph")

    g = group("reduce", "the R-pattern reduction")
    action(g, "once", cmd_reduce_once, "apply one reduction").add_argument("graph")
    action(g, "full", cmd_reduce_full, "reduce until no R-pattern remains").add_argument("graph")

    g = group("patterns", "Z and R pattern search")
    p = action(g, "find", cmd_patterns_find, "find a pattern occurrence")
    p.add_argument("graph")
    p.add_argument("--family", choices=["Z", "R"], default="Z")

    g = group("colour", "constructive colourings")
    action(g, "subcubic", cmd_colour_subcubic, "at most 9 colours").add_argument("graph")
    action(g, "subquartic", cmd_colour_subquartic, "at most 69 colours").add_argument("graph")
    action(g, "bounds", cmd_colour_bounds, "closed-form bounds").add_argument("delta", type=int)

    g = group("oclique", "oriented cliques")
    action(g, "check", cmd_oclique_check, "weak-diameter test").add_argument("graph")
    action(g, "bound", cmd_oclique_bound, "order bound for max degree").add_argument("delta", type=int)
    p = action(g, "search", cmd_oclique_search, "exhaustive or random search")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    action(g, "orient", cmd_oclique_orient, "orient an undirected graph as an oclique").add_argument("graph")

    g = group("tourn", "tournament enumeration")
    action(g, "enum", cmd_tourn_enum, "tournaments on n <= 7 vertices").add_argument("n", type=int)
    p = action(g, "ocliques", cmd_tourn_ocliques, "subcubic ocliques up to an order")
    p.add_argument("max_order", type=int)
    p.add_argument("--include-cubic", action="store_true")
    p = action(g, "filter", cmd_tourn_filter, "universal-target filter over 7-vertex tournaments")
    p.add_argument("--include-cubic", action="store_true")

    p = groups.add_parser("verify", parents=[common], help="check a colouring certificate")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.set_defaults(fn=cmd_verify, action=None, sub=p)
    return parser


def replay_line(args: argparse.Namespace) -> str:
    """Normalised invocation: positionals in order, then every option with its value."""
    words = [PROG, args.group] + ([args.action] if args.action else [])
    options = []
    for act in args.sub._actions:
        if act.dest in ("help", "json"):
            continue
        value = getattr(args, act.dest)
        if not act.option_strings:
            words += [str(v) for v in value] if isinstance(value, list) else [str(value)]
        elif isinstance(value, bool):
            if value:
                options.append(act.option_strings[-1])
        elif value is not None:
            options += [act.option_strings[-1], str(value)]
    if args.json:
        options.append("--json")
    return " ".join(words + options)


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    return obj


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    replay = replay_line(args)
    try:
        report = args.fn(args)
    except (UsageError, GraphFormatError, InvalidGraphError, ValueError) as exc:
        print(f"# replay: {replay}", file=stdout)
        print(f"error: {exc}", file=stderr)
        return 2
    if args.json:
        doc = {"replay": replay, "status": report.status, "report": report.lines, "data": report.data}
        if report.payload is not None and not args.out:
            doc["output"] = report.payload
        print(json.dumps(_clean(doc), indent=2), file=stdout)
    else:
        print(f"# replay: {replay}", file=stdout)
        for line in report.lines:
            print(line, file=stdout)
        if report.payload is not None and not args.out:
            stdout.write(report.payload)
    if report.payload is not None and args.out:
        try:
            Path(args.out).write_text(report.payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=stderr)
            return 2
    return report.status


def main() -> None:
    sys.exit(run())

"""Command-line interface.

Subcommands: enumerate | verify | export | regress | oracle-check.
Input is either a built-in family (--family, with --k/--m/--n/--labels)
or a file (--input) holding a presentation or a diagram; diagram files
are recognized by their ``arcs:`` line and run through the Wirtinger
construction.  Exit codes: 0 success, 1 input or verification error,
2 enumeration limit exceeded (so batch drivers can raise limits for
just those cases).  QF_MAX_VERTICES overrides the default vertex limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import diagram as diagram_mod
from .engine import (
    CayleyGraph,
    EnumerationLimits,
    canonical_code,
    components,
    enumerate_quandle,
    quandle_table,
    verify,
)
from .families import (
    FAMILY_NAMES,
    FamilyParams,
    build_explicit_Qa,
    build_explicit_Qd,
    family_presentation,
    table1_rows,
)
from .presentation import Presentation, expand_relations, parse_presentation
from .words import ParseError

DOT_COLORS = ("black", "red", "blue", "forestgreen", "darkorange", "purple", "brown", "cadetblue")


def _default_max_vertices() -> int:
    env = os.environ.get("QF_MAX_VERTICES")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"QF_MAX_VERTICES must be an integer, got {env!r}")
    return 1_000_000


def _add_input_options(sub: argparse.ArgumentParser):
    sub.add_argument("--family", choices=FAMILY_NAMES, help="built-in family selector")
    sub.add_argument("--input", metavar="FILE", help="presentation or diagram file")
    sub.add_argument("--k", type=int, help="twist count for Gkmn/Gkm (nonzero)")
    sub.add_argument("--m", type=int, help="first strut label")
    sub.add_argument("--n", type=int, help="second strut label")
    sub.add_argument("--labels", help="edge labels n1,n2,... overriding the input's")
    sub.add_argument("--max-vertices", type=int, default=None)
    sub.add_argument("--max-steps", type=int, default=1_000_000_000)


def _parse_labels(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"bad label list {text!r}")


def _load_presentation(args) -> Presentation:
    if (args.family is None) == (args.input is None):
        raise ParseError("exactly one of --family and --input is required")
    labels = _parse_labels(args.labels)
    if args.family:
        return family_presentation(
            FamilyParams(args.family, k=args.k, m=args.m, n=args.n, labels=labels)
        )
    with open(args.input, encoding="utf-8") as handle:
        text = handle.read()
    if any(line.split("#", 1)[0].strip().startswith("arcs:") for line in text.splitlines()):
        pres = diagram_mod.wirtinger(diagram_mod.parse_diagram(text))
    else:
        pres = parse_presentation(text)
    if labels is not None:
        pres = pres.with_labels(labels)
    return pres


def _limits(args) -> EnumerationLimits:
    max_vertices = args.max_vertices if args.max_vertices is not None else _default_max_vertices()
    return EnumerationLimits(max_vertices=max_vertices, max_steps=args.max_steps)


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def format_stats(result, pres, graph) -> str:
    lines = [f"outcome={result.outcome}"]
    if graph is not None:
        _, edge_sizes = components(graph)
        lines.append(f"final_size={result.stats.live}")
        lines.append(f"components={len(components(graph)[0])}")
        lines.append(
            "component_sizes=" + ",".join(str(edge_sizes[e]) for e in sorted(edge_sizes))
        )
    for key, value in result.stats.as_dict().items():
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


def export_dot(graph: CayleyGraph, no_loops: bool = False) -> str:
    """Deterministic DOT rendering: one node per element, one directed
    edge per (element, generator), colored by generator."""
    order = graph.live_vertices()
    index = {v: i for i, v in enumerate(order)}
    lines = ["digraph quandle {"]
    for v in order:
        lines.append(f'  n{index[v]} [label="{index[v]}"];')
    for g, gen in enumerate(graph.gens):
        color = DOT_COLORS[g % len(DOT_COLORS)]
        for v in order:
            w = graph.find(graph.fwd[g][v])
            if no_loops and w == v:
                continue
            lines.append(
                f'  n{index[v]} -> n{index[w]} [label="{gen.name}" color="{color}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(graph: CayleyGraph, pres: Presentation, stats) -> str:
    """Stable JSON export: size, labels, components and generator actions."""
    order = graph.live_vertices()
    index = {v: i for i, v in enumerate(order)}
    orbits, edge_sizes = components(graph)
    orbit_of = {}
    for i, orbit in enumerate(orbits):
        for v in orbit:
            orbit_of[v] = i
    edge_orbit = {
        pres.edge_of[gen]: orbit_of[graph.find(graph.basepoint[gen.id])]
        for gen in graph.gens
    }
    doc = {
        "size": len(order),
        "edge_labels": list(pres.labels),
        "components": [
            {
                "edge": edge,
                "size": edge_sizes[edge],
                "members": sorted(index[v] for v in orbits[edge_orbit[edge]]),
            }
            for edge in sorted(edge_sizes)
        ],
        "actions": {
            gen.name: [index[graph.find(graph.fwd[g][v])] for v in order]
            for g, gen in enumerate(graph.gens)
        },
        "stats": stats.as_dict(),
    }
    return json.dumps(doc, indent=2) + "\n"


def format_table(graph: CayleyGraph) -> str:
    table = quandle_table(graph)
    n = table.shape[0]
    width = len(str(n - 1))
    rows = [" ".join(f"{int(table[y, x]):{width}d}" for x in range(n)) for y in range(n)]
    return "\n".join(rows) + "\n"


def cmd_enumerate(args) -> int:
    pres = expand_relations(_load_presentation(args))
    result = enumerate_quandle(pres, _limits(args))
    if not result.completed:
        _emit(format_stats(result, pres, None), args.output)
        return 2
    graph = result.graph
    violations = verify(graph, pres)
    if args.format == "stats":
        _emit(format_stats(result, pres, graph), args.output)
    elif args.format == "dot":
        _emit(export_dot(graph, no_loops=args.no_loops), args.output)
    elif args.format == "json":
        _emit(export_json(graph, pres, result.stats), args.output)
    elif args.format == "table":
        _emit(format_table(graph), args.output)
    if violations:
        for violation in violations:
            print(f"verify: {violation}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    pres = expand_relations(_load_presentation(args))
    result = enumerate_quandle(pres, _limits(args))
    if not result.completed:
        print(format_stats(result, pres, None), end="")
        return 2
    violations = verify(result.graph, pres)
    for violation in violations:
        print(violation)
    print(f"verify: {'ok' if not violations else f'{len(violations)} violations'} "
          f"(size {result.stats.live})")
    return 0 if not violations else 1


def cmd_export(args) -> int:
    return cmd_enumerate(args)


def cmd_regress(args) -> int:
    rows = table1_rows()
    limits = EnumerationLimits(
        max_vertices=args.max_vertices if args.max_vertices is not None else _default_max_vertices(),
        max_steps=args.max_steps,
    )
    failures = 0
    for row in rows:
        if row.get("slow") and args.skip_slow:
            print(f"SKIP  {row['family']} {tuple(row['labels'])} (slow)")
            continue
        pres = expand_relations(
            family_presentation(FamilyParams(row["family"], labels=tuple(row["labels"])))
        )
        result = enumerate_quandle(pres, limits)
        got = result.stats.live if result.completed else None
        ok = got == row["expected"]
        failures += 0 if ok else 1
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {row['family']} {tuple(row['labels'])}: got {got}, expected {row['expected']}")
    return 0 if failures == 0 else 1


def cmd_oracle_check(args) -> int:
    ks = [args.k] if args.k else list(range(1, 5))
    ms = [args.m] if args.m else list(range(1, 5))
    ns = [args.n] if args.n else list(range(1, 5))
    failures = 0
    for k in ks:
        for m in ms:
            for n in ns:
                pres = expand_relations(family_presentation(FamilyParams("Gkmn", k=k, m=m, n=n)))
                result = enumerate_quandle(pres, _limits(args))
                if not result.completed:
                    print(f"FAIL  G({k},{m},{n}): enumeration hit limits")
                    failures += 1
                    continue
                graph = result.graph
                ok_a = canonical_code(graph, graph.basepoint[0]) == build_explicit_Qa(k, m, n).canonical_code()
                ok_d = canonical_code(graph, graph.basepoint[3]) == build_explicit_Qd(k, m).canonical_code()
                ok_size = result.stats.live == 4 * k * m * n + 2 * k * m + 2 * k * n
                if ok_a and ok_d and ok_size:
                    print(f"PASS  G({k},{m},{n}): size {result.stats.live}, Qa and Qd match the models")
                else:
                    print(f"FAIL  G({k},{m},{n}): size_ok={ok_size} Qa_ok={ok_a} Qd_ok={ok_d}")
                    failures += 1
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quandleforge",
        description="Enumerate fundamental N-quandles of spatial graphs and links.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    enum = subs.add_parser("enumerate", help="enumerate a quandle and print or export it")
    _add_input_options(enum)
    enum.add_argument("--format", choices=("stats", "dot", "json", "table"), default="stats")
    enum.add_argument("--output", "-o", metavar="FILE")
    enum.add_argument("--no-loops", action="store_true", help="suppress self-loop edges in DOT")
    enum.set_defaults(func=cmd_enumerate)

    ver = subs.add_parser("verify", help="enumerate and check axioms and relations")
    _add_input_options(ver)
    ver.set_defaults(func=cmd_verify)

    exp = subs.add_parser("export", help="alias of enumerate for writing artifacts")
    _add_input_options(exp)
    exp.add_argument("--format", choices=("stats", "dot", "json", "table"), default="json")
    exp.add_argument("--output", "-o", metavar="FILE")
    exp.add_argument("--no-loops", action="store_true")
    exp.set_defaults(func=cmd_export)

    reg = subs.add_parser("regress", help="run the shipped size-regression manifest")
    reg.add_argument("--skip-slow", action="store_true", help="skip rows marked slow")
    reg.add_argument("--max-vertices", type=int, default=None)
    reg.add_argument("--max-steps", type=int, default=1_000_000_000)
    reg.set_defaults(func=cmd_regress)

    orc = subs.add_parser("oracle-check", help="compare enumerated components to the closed-form models")
    orc.add_argument("--k", type=int)
    orc.add_argument("--m", type=int)
    orc.add_argument("--n", type=int)
    orc.add_argument("--max-vertices", type=int, default=None)
    orc.add_argument("--max-steps", type=int, default=1_000_000_000)
    orc.set_defaults(func=cmd_oracle_check)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())

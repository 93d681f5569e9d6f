"""Command-line entry points.

Exit codes: 0 success, 1 invalid input, 2 size-guard refusal, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io as gio
from .approx import bcmc_approx, random_half_cmc, wcmc_approx
from .bench import emit_csv, emit_json, run_bench
from .errors import ConncutError, InvalidInputError, InvariantViolationError, SizeGuardError
from .exact import brute_force_cmc, dp_solve, solve_treewidth
from .generators import FAMILIES, generate_instance
from .graph import Solution
from .hardness import sat_to_cmc, validate_pm3sat
from .planar import ptas_solve_report, radial_coloring, validate_touching_classes
from .treewidth import build_decomposition, make_nice, validate_decomposition


def _solution_payload(doc: gio.GraphDocument, sol: Solution) -> dict:
    return {
        "value": gio.format_weight(sol.cut_value),
        "vertices": sorted(doc.label_of(v) for v in sol.vertices),
        "connected": sol.connected,
    }


def _emit(payload: dict, fmt: str, out=None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "json":
        print(json.dumps(payload, indent=2), file=out)
    elif fmt == "csv":
        keys = list(payload)
        print(",".join(keys), file=out)
        print(",".join(str(payload[k]).replace(",", ";") for k in keys), file=out)
    else:
        for k, v in payload.items():
            if isinstance(v, list):
                v = " ".join(str(x) for x in v)
            print(f"{k} {v}", file=out)


def _parse_params(pairs) -> dict:
    params = {}
    for p in pairs or ():
        if "=" not in p:
            raise InvalidInputError(f"--param expects key=value, got {p!r}")
        k, v = p.split("=", 1)
        params[k] = v
    return params


def cmd_solve(args) -> int:
    doc = gio.read_graph(args.graph)
    if args.algo == "bcmc":
        sol = bcmc_approx(doc.graph, args.seed)
    elif args.algo == "wcmc":
        sol = wcmc_approx(doc.graph, Fraction(args.epsilon), args.seed)
    else:
        sol = random_half_cmc(doc.graph, args.trials, args.seed)
    _emit(_solution_payload(doc, sol), args.format)
    return 0


def cmd_exact(args) -> int:
    doc = gio.read_graph(args.graph)
    if args.method == "bf":
        sol = brute_force_cmc(doc.graph, force=args.force)
    else:
        td = gio.read_td(args.td) if args.td else None
        sol = solve_treewidth(doc.graph, td)
    _emit(_solution_payload(doc, sol), args.format)
    return 0


def cmd_ptas(args) -> int:
    doc = gio.read_graph(args.graph)
    if doc.embedding is None:
        raise InvalidInputError("ptas needs rot lines (an embedding) in the graph file")
    sol, report = ptas_solve_report(doc.graph, doc.embedding, Fraction(args.epsilon))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    payload = _solution_payload(doc, sol)
    payload["exact_within_eps"] = report.exact
    _emit(payload, args.format)
    return 0


def cmd_reduce_sat(args) -> int:
    inst = gio.read_pmsat(args.pmsat)
    gdt = sat_to_cmc(inst)
    doc = gio.GraphDocument(gdt.graph, tuple(range(1, gdt.graph.n + 1)))
    gio.write_graph(args.out_graph, doc, comment=f"gadget for {args.pmsat}")
    with open(args.out_meta, "w", encoding="utf-8") as fh:
        fh.write(gio.gadget_metadata_json(gdt) + "\n")
    _emit({"vertices": gdt.graph.n, "edges": gdt.graph.m,
           "K": gdt.k_helpers, "threshold": gio.format_weight(gdt.threshold)},
          args.format)
    return 0


def cmd_gen(args) -> int:
    inst = generate_instance(args.family, _parse_params(args.param), args.seed)
    doc = gio.GraphDocument(inst.graph, tuple(range(1, inst.graph.n + 1)), inst.embedding)
    text = gio.format_graph(doc, comment=inst.name)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    with open(args.suite, "r", encoding="utf-8") as fh:
        suite = json.load(fh)
    records = run_bench(suite)
    text = emit_json(records) if args.format == "json" else emit_csv(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = [r for r in records if r.error or (not r.verified and not r.error)]
    return 0 if not bad else 1


def cmd_validate(args) -> int:
    if args.kind == "pmsat":
        res = validate_pm3sat(gio.read_pmsat(args.target))
    elif args.kind == "td":
        doc = gio.read_graph(args.graph)
        res = validate_decomposition(doc.graph, gio.read_td(args.target))
    else:  # coloring
        doc = gio.read_graph(args.target)
        if doc.embedding is None:
            raise InvalidInputError("coloring validation needs rot lines")
        coloring = radial_coloring(doc.graph, doc.embedding, args.k)
        res = coloring.validation
    payload = {"valid": bool(res), "problems": res.problems}
    _emit(payload, args.format)
    return 0 if res else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="conncut",
                                 description="connected maximum cut toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_fmt(p):
        p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")

    p = sub.add_parser("solve", help="approximation algorithms")
    p.add_argument("graph")
    p.add_argument("--algo", choices=("bcmc", "wcmc", "randomhalf"), default="bcmc")
    p.add_argument("--epsilon", default="1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    add_fmt(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="exact solvers")
    p.add_argument("graph")
    p.add_argument("--method", choices=("bf", "tw"), default="bf")
    p.add_argument("--td", help="externally supplied tree decomposition file")
    p.add_argument("--force", action="store_true", help="override the brute-force size guard")
    add_fmt(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("ptas", help="planar (1-eps) solver")
    p.add_argument("graph")
    p.add_argument("--epsilon", default="1/2")
    p.add_argument("--report", help="write the per-group run report (JSON) here")
    add_fmt(p)
    p.set_defaults(func=cmd_ptas)

    p = sub.add_parser("reduce-sat", help="build the hardness gadget for a pmsat file")
    p.add_argument("pmsat")
    p.add_argument("--out-graph", required=True)
    p.add_argument("--out-meta", required=True)
    add_fmt(p)
    p.set_defaults(func=cmd_reduce_sat)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("suite")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", help="validate decompositions, colorings, pmsat files")
    p.add_argument("kind", choices=("td", "pmsat", "coloring"))
    p.add_argument("target")
    p.add_argument("--graph", help="host graph (td validation)")
    p.add_argument("--k", type=int, default=3, help="class count (coloring validation)")
    add_fmt(p)
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except (ConncutError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``sigmagroups analyze`` and ``sigmagroups sweep``.

Exit codes: 0 success, 2 malformed input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import group_from_text
from .report import analyze, dumps, summarize, sweep, write_report
from .sigma import parse_sigma
from .verdict import DEFAULT_CAPS, CapExceeded, InconsistencyError

EXIT_OK, EXIT_PARSE, EXIT_INCONSISTENT = 0, 2, 3

CAP_KEYS = ("subgroup_cap", "element_cap", "index_cap", "node_budget", "kmax", "max_degree", "seed")


def _caps(args):
    conf = {}
    if args.config:
        conf = json.loads(Path(args.config).read_text())
        unknown = set(conf) - set(CAP_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in CAP_KEYS:
        v = getattr(args, key)
        if v is not None:
            conf[key] = v
    return DEFAULT_CAPS.with_(**conf)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--subgroup-cap", type=int, dest="subgroup_cap")
    common.add_argument("--element-cap", type=int, dest="element_cap")
    common.add_argument("--index-cap", type=int, dest="index_cap")
    common.add_argument("--node-budget", type=int, dest="node_budget")
    common.add_argument("--max-degree", type=int, dest="max_degree")
    common.add_argument("--kmax", type=int)
    common.add_argument("--seed", type=int, help="random sampling order (never changes results)")
    common.add_argument("--config", help="JSON file with cap values; flags override it")
    common.add_argument("--json", action="store_true", help="print JSON instead of a summary")
    common.add_argument("--out", type=Path, help="directory for per-report JSON files")
    common.add_argument("--timings", action="store_true", help="record wall-clock timings")

    p = argparse.ArgumentParser(prog="sigmagroups",
                                description="sigma-partition structure of finite permutation groups")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", parents=[common], help="analyze one group")
    a.add_argument("group", help='group expression, e.g. "A5 x (C29:C7@7)" or "preset:ex15iii"')
    a.add_argument("--sigma", default="sylow", help='sigma-partition, e.g. "2 3|5|*" (default: sylow)')
    s = sub.add_parser("sweep", parents=[common], help="cross-validate the small catalog")
    s.add_argument("bound", type=int, help="largest group order")
    s.add_argument("sigmas", nargs="?", default="sylow",
                   help='";"-separated sigma-partitions (default: sylow)')
    s.add_argument("--jobs", type=int, default=1)
    return p


def cmd_analyze(args, out=None) -> int:
    out = out or sys.stdout
    try:
        caps = _caps(args)
        sigma = parse_sigma(args.sigma)
        G = group_from_text(args.group, caps)
    except (ValueError, KeyError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        rep = analyze(G, sigma, args.group, caps, timings=args.timings)
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    if args.out:
        write_report(rep, args.out)
    out.write(dumps(rep) if args.json else summarize(rep) + "\n")
    return EXIT_OK if rep["psigmat"]["consistent"] else EXIT_INCONSISTENT


def cmd_sweep(args, out=None) -> int:
    out = out or sys.stdout
    try:
        caps = _caps(args)
        sigmas = [parse_sigma(t) for t in args.sigmas.split(";")]
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    jsonl = []

    def emit(rep):
        if args.out and "error" not in rep:
            write_report(rep, args.out)
        if args.json:
            jsonl.append(rep)
        else:
            oracle = rep.get("psigmat", {}).get("oracle", {"undecided": rep.get("error")})
            shown = oracle if isinstance(oracle, str) else "undecided"
            ok = rep.get("psigmat", {}).get("consistent", False)
            out.write(f"{rep['group']:<32} {rep['sigma']:<14} {shown:<10} {'' if ok else 'DISAGREE'}\n")

    summary = sweep(args.bound, sigmas, caps, jobs=args.jobs, on_report=emit)
    if args.json:
        out.write(json.dumps({"reports": jsonl, "summary": summary.final_line()}, sort_keys=True) + "\n")
    else:
        out.write(summary.final_line() + "\n")
    return EXIT_INCONSISTENT if summary.disagreements else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return cmd_analyze(args)
    return cmd_sweep(args)


if __name__ == "__main__":
    sys.exit(main())

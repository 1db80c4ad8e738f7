"""Command-line front end.

Exit codes: 0 success / verification pass, 1 verification failure,
2 usage or parse/validation error, 3 desk-scale resource guard exceeded.
All numeric output is exact fraction strings; nothing here is randomized.
"""

from __future__ import annotations

import json
import sys

import argparse

from .errors import InvalidGraphError, SignatureError, SizeGuardError
from .graphs import enumerate_stable_graphs
from .invariance import invariance_operator
from .pushforward import InteriorMonomial, faber_constant, forget_pushforward
from .serialize import (
    class_from_obj,
    class_to_obj,
    dump_file,
    dumps,
    graph_from_obj,
    graph_to_obj,
    interior_from_obj,
    interior_to_obj,
    load_file,
)
from .verifier import verify_witness_independence


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="stratacalc",
        description="Exact calculus on decorated stable dual graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="enumerate stable dual graphs")
    e.add_argument("--g", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--max-edges", type=int, required=True)
    e.add_argument("--min-edges", type=int, default=None)
    e.add_argument("--out", default=None, help="output path (default: stdout)")

    r = sub.add_parser("r1", help="apply the genus-lowering operator to a class file")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--level", type=int, default=1)
    r.add_argument("--experimental", action="store_true",
                   help="allow level >= 2 (grading not asserted)")
    r.add_argument("--out", default=None)

    pu = sub.add_parser("push", help="forgetful pushforward of an interior class file")
    pu.add_argument("--in", dest="infile", required=True)
    pu.add_argument("--forget", type=int, required=True, help="marking to forget")
    pu.add_argument("--out", default=None)

    f = sub.add_parser("faber", help="print the double-factorial intersection constant")
    f.add_argument("--g", type=int, required=True)
    f.add_argument("--l", type=int, required=True)

    v = sub.add_parser("verify", help="replay the independence case analysis for (g,n,k)")
    v.add_argument("--g", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--report", default=None, help="write the JSON report here")
    v.add_argument("--text", action="store_true", help="print the text table")
    v.add_argument("--recursive", action="store_true",
                   help="re-verify named induction sub-instances")
    v.add_argument("--witness-table", default=None,
                   help="JSON file overriding witness graphs per monomial "
                        "(diagnostic / fault-injection hook)")
    return p


def _emit(obj, path) -> None:
    if path:
        dump_file(obj, path)
    else:
        sys.stdout.write(dumps(obj))


def _cmd_enumerate(args) -> int:
    graphs = enumerate_stable_graphs(args.g, args.n, args.max_edges,
                                     min_edges=args.min_edges)
    _emit({
        "g": args.g, "n": args.n,
        "max_edges": args.max_edges,
        "min_edges": args.min_edges if args.min_edges is not None
        else min(1, args.max_edges),
        "count": len(graphs),
        "graphs": [graph_to_obj(G) for G in graphs],
    }, args.out)
    return 0


def _cmd_r1(args) -> int:
    cls = class_from_obj(load_file(args.infile))
    out = invariance_operator(cls, level=args.level, experimental=args.experimental)
    _emit(class_to_obj(out), args.out)
    return 0


def _cmd_push(args) -> int:
    cls = interior_from_obj(load_file(args.infile))
    _emit(interior_to_obj(forget_pushforward(cls, args.forget)), args.out)
    return 0


def _cmd_faber(args) -> int:
    print(faber_constant(args.g, args.l))
    return 0


def _load_witness_table(path):
    table = {}
    obj = load_file(path)
    for entry in obj.get("overrides", ()):
        mono = InteriorMonomial(
            tuple(entry["monomial"].get("kappa", ())),
            {int(m): int(e) for m, e in entry["monomial"].get("psi", {}).items()})
        table[mono] = graph_from_obj(entry["graph"])
    return table


def _cmd_verify(args) -> int:
    overrides = None
    if args.witness_table:
        overrides = _load_witness_table(args.witness_table)
    report = verify_witness_independence(args.g, args.n, args.k,
                                         recursive=args.recursive,
                                         witness_overrides=overrides)
    if args.report:
        with open(args.report, "w", encoding="ascii") as fh:
            fh.write(report.to_json())
    if args.text:
        sys.stdout.write(report.to_text())
    elif not args.report:
        sys.stdout.write(report.to_json())
    return 0 if report.passed else 1


_DISPATCH = {
    "enumerate": _cmd_enumerate,
    "r1": _cmd_r1,
    "push": _cmd_push,
    "faber": _cmd_faber,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:   # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except SizeGuardError as exc:
        print(f"size guard exceeded: {exc}", file=sys.stderr)
        return 3
    except (InvalidGraphError, SignatureError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.  JSON goes to stdout (or ``--output``), a short summary to stderr.

    gln6j expand --n 4 "((a1 a2 a3 b1)(b2 c1 c2 c3))"
    gln6j check --n 2 "((a1 b1))"
    gln6j overlay --n 3 --weight 2,1,0 "a^1_1 a^1_2 a^2_3"
    gln6j selection --n 4 --f1 ... --f2 ... --f3 ... --f4 ...
    gln6j sixj --n 4 --f1 ... --f2 ... --f3 ... --f4 ... [--oracle]
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Optional, Sequence

from .glaction import check_semi_invariant
from .grammar import parse_expr, parse_matrix_monomial
from .polyalg import poly_to_json, render_rational
from .seminv import expand, infer_weights, render_spec
from .sixj import build_problem, selection_set, sixj_oracle, sixj_value
from .weylreal import collect_determinants, membership_check, young_overlay


def _weight(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}; use e.g. 2,1,0")


def _problem(args):
    specs = [parse_expr(getattr(args, f"f{k}"), args.n) for k in range(1, 5)]
    return build_problem(args.n, *specs)


def cmd_expand(args) -> dict:
    spec = parse_expr(args.expr, args.n)
    ex = expand(spec)
    if ex.is_zero:
        return {"poly": [], "warning": "zero expansion"}
    return {
        "spec": render_spec(spec),
        "weights": {k: list(v) for k, v in sorted(infer_weights(spec).items())},
        "zvars": [r.to_json() for r in ex.registries],
        "poly": poly_to_json(ex.detpoly),
    }


def cmd_check(args) -> dict:
    ex = expand(parse_expr(args.expr, args.n))
    return check_semi_invariant(ex.detpoly, args.n).to_json()


def cmd_overlay(args) -> dict:
    m = parse_matrix_monomial(args.expr, args.n)
    out = young_overlay(m, args.weight)
    doc = {"poly": poly_to_json(out)}
    if out:
        dets = collect_determinants(out, args.weight)
        doc["determinants"] = poly_to_json(dets)
        doc["membership"] = membership_check(dets, args.weight)
    return doc


def cmd_selection(args) -> dict:
    p = _problem(args)
    sel = selection_set(p)
    return {
        "selection_size": len(sel),
        "quadruples": sel.to_json(),
        "weights": p.family_weights_json(),
        "mismatches": list(p.mismatches),
    }


def cmd_sixj(args) -> dict:
    p = _problem(args)
    sel = selection_set(p)
    value = sixj_value(p, sel, workers=args.workers)
    doc = {
        "value": render_rational(value),
        "selection_size": len(sel),
        "weights": p.family_weights_json(),
        "mismatches": list(p.mismatches),
    }
    if args.oracle:
        oracle = sixj_oracle(p)
        doc["oracle"] = render_rational(oracle)
        doc["agrees"] = oracle == value
    return doc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gln6j", description="gl(n) semi-invariants and 6j-symbols")
    ap.add_argument("--output", help="also write the JSON document to this file")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="verb", required=True)

    def rank(p):
        p.add_argument("--n", type=int, required=True, help="rank of gl(n), at least 2")

    for verb, fn, helptext in (("expand", cmd_expand, "expand a bracket expression"),
                               ("check", cmd_check, "test semi-invariance of an expansion")):
        p = sub.add_parser(verb, help=helptext)
        rank(p)
        p.add_argument("expr")
        p.set_defaults(fn=fn)

    p = sub.add_parser("overlay", help="Young symmetrizer on a matrix-element monomial")
    rank(p)
    p.add_argument("--weight", type=_weight, required=True)
    p.add_argument("expr")
    p.set_defaults(fn=cmd_overlay)

    for verb, fn in (("selection", cmd_selection), ("sixj", cmd_sixj)):
        p = sub.add_parser(verb, help=f"{verb} for four bracket expressions")
        rank(p)
        for k in range(1, 5):
            p.add_argument(f"--f{k}", required=True)
        if verb == "sixj":
            p.add_argument("--oracle", action="store_true", help="also run the differential contraction")
            p.add_argument("--workers", type=int, default=None,
                           help="worker processes (default: GLN6J_WORKERS or 1)")
        p.set_defaults(fn=fn)
    return ap


def _summary(verb: str, doc: dict, seconds: float) -> str:
    if "error" in doc:
        return f"{verb}: error: {doc['error']['message']}"
    if verb == "sixj":
        extra = f", oracle {doc['oracle']}" if "oracle" in doc else ""
        return f"sixj = {doc['value']} over {doc['selection_size']} quadruples{extra} ({seconds:.2f}s)"
    if verb == "selection":
        return f"{doc['selection_size']} quadruples ({seconds:.2f}s)"
    if verb == "check":
        return f"semi-invariant: {doc['is_semi_invariant']}, weight {doc['weight']}"
    if "warning" in doc:
        return f"{verb}: {doc['warning']}"
    return f"{verb}: {len(doc['poly'])} terms ({seconds:.2f}s)"


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    t0 = time.perf_counter()
    code = 0
    try:
        if args.n < 2:
            raise ValueError(f"rank must be at least 2, got {args.n}")
        doc = args.fn(args)
    except (ValueError, TypeError) as exc:
        doc = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = 2
    text = json.dumps(doc, sort_keys=True, indent=2)
    print(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(_summary(args.verb, doc, time.perf_counter() - t0), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

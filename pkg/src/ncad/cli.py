"""``ncad`` command-line interface: one JSON document on stdout per run.

Exit codes: 0 success, 1 mathematical negative, 2 usage, I/O or schema error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import jsonio
from .derivations import check_leibniz, derivation_table_order0, inner_solve
from .diffcalc import NcOracle, delta_oracle, delta_sym
from .errors import MathError, NcadError, SchemaError, UsageError
from .exactalg import to_scalar
from .integrate import check_integrability, integrate_higher, integrate_order1, integrate_poly
from .ncpoly import evaluate
from .testkit import RngSpec


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _paths(value: str) -> list:
    return [p for p in value.split(",") if p]


def _load_poly(path):
    return jsonio.decode_poly(jsonio.load(path))


def _load_points(path):
    return jsonio.decode_points(jsonio.load(path))


def _load_base(path):
    xs, _ = _load_points(path)
    if len(xs) != 1:
        raise SchemaError(f"{path}: a base file holds one point")
    return xs[0]


def cmd_eval(args):
    p = _load_poly(args.poly)
    xs, zs = _load_points(args.points)
    return jsonio.encode_matrix(evaluate(p, xs, zs)), 0


def cmd_delta(args):
    p = _load_poly(args.poly)
    if not args.numeric:
        return jsonio.encode_poly(delta_sym(p, args.slot)), 0
    if not args.points:
        raise UsageError("--numeric needs --points")
    xs, zs = _load_points(args.points)
    return jsonio.encode_matrix(delta_oracle(NcOracle.from_poly(p), args.slot)(xs, zs)), 0


def cmd_check(args):
    Fs = [NcOracle.from_poly(_load_poly(p)) for p in _paths(args.F)]
    rep = check_integrability(Fs, rng=RngSpec(args.seed), count=args.samples)
    return rep.to_json(), 0 if rep.passed else 1


def cmd_integrate(args):
    Fs = [NcOracle.from_poly(_load_poly(p)) for p in _paths(args.F)]
    Ys = [_load_base(p) for p in _paths(args.base)]
    k = args.slot_count
    if len(Fs) != k + 1 or len(Ys) != k + 1:
        raise UsageError(f"--slot-count {k} needs {k + 1} sources and {k + 1} base points")
    rng = RngSpec(args.seed)
    if k == 0:
        f = integrate_order1(Fs[0], Ys[0], to_scalar(args.c), rng=rng)
        base = {"f0": jsonio.encode_matrix(f.basevalue)}
    else:
        if to_scalar(args.c) != 0:
            raise UsageError("--c applies to order-0 integration only")
        f = integrate_higher(Fs, Ys, rng=rng)
        base = {"g": jsonio.encode_multilinear(f.g)}
    out = {"order": k, "base_points": [jsonio.encode_point(y) for y in Ys], **base, "recipe": f.recipe()}
    if args.points:
        xs, zs = _load_points(args.points)
        out["value"] = jsonio.encode_matrix(f(xs, zs))
    return out, 0


def cmd_integrate_poly(args):
    return jsonio.encode_poly(integrate_poly(_load_poly(args.poly), args.slot)), 0


def cmd_derivation(args):
    F = NcOracle.from_poly(_load_poly(args.poly))
    table = derivation_table_order0(F, _load_base(args.base))
    entries = [{"i": i, "j": j, "value": jsonio.encode_matrix(v)} for (i, j), v in sorted(table.entries.items())]
    leibniz = check_leibniz(table)
    out = {"s": table.s, "table": entries, "leibniz": leibniz.to_json()}
    out["N"] = jsonio.encode_matrix(inner_solve(table, to_scalar(args.c)))
    return out, 0


def cmd_selftest(args):
    from . import selftest

    results = selftest.run(args.seed)
    rows = []
    for rep, secs in results:
        rows.append({"check": rep.name, "passed": rep.passed, "checked": rep.checked, "seconds": round(secs, 3)})
        if not rep.passed:
            rows[-1]["witness"] = jsonio.encode_any(rep.witness)
    width = max(len(r["check"]) for r in rows)
    for r in rows:
        print(f"{r['check']:<{width}}  {'PASS' if r['passed'] else 'FAIL'}  {r['checked']:>4}  {r['seconds']:.3f}s",
              file=sys.stderr)
    ok = all(r["passed"] for r in rows)
    return {"seed": args.seed, "passed": ok, "checks": rows}, 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncad", description="Exact difference-differential calculus for free nc functions.")
    common = _Parser(add_help=False)
    common.add_argument("--output", help="write the JSON result to this file instead of stdout")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate a polynomial at points")
    p.add_argument("--poly", required=True)
    p.add_argument("--points", required=True)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("delta", parents=[common], help="j-th difference-differential of a polynomial")
    p.add_argument("--slot", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--numeric", action="store_true", help="evaluate by block upper triangular evaluation")
    p.add_argument("--points")
    p.set_defaults(run=cmd_delta)

    p = sub.add_parser("check", parents=[common], help="compatibility conditions for F_0..F_k")
    p.add_argument("--F", required=True, help="comma-separated polynomial files")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=3)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("integrate", parents=[common], help="antiderivative from F_0..F_k at base points")
    p.add_argument("--slot-count", type=int, required=True, help="order k of the antiderivative")
    p.add_argument("--F", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--c", default="0", help="scalar constant for order 0, as p/q")
    p.add_argument("--points")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_integrate)

    p = sub.add_parser("integrate-poly", parents=[common], help="symbolic antiderivative of a polynomial in one slot")
    p.add_argument("--poly", required=True)
    p.add_argument("--slot", type=int, required=True)
    p.set_defaults(run=cmd_integrate_poly)

    p = sub.add_parser("derivation", parents=[common], help="derivation table and inner witness N at a base point")
    p.add_argument("--poly", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--c", default="0")
    p.set_defaults(run=cmd_derivation)

    p = sub.add_parser("selftest", parents=[common], help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_selftest)
    return parser


def _emit(doc, output) -> None:
    text = jsonio.dumps(doc)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    output = None
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        doc, code = args.run(args)
    except NcadError as exc:
        doc = {"error": exc.kind, "detail": str(exc)}
        if exc.witness is not None:
            doc["witness"] = jsonio.encode_any(exc.witness)
        code = 1 if isinstance(exc, MathError) else 2
        print(f"ncad: {exc.kind}: {exc}", file=sys.stderr)
    except ValueError as exc:
        doc, code = {"error": "UsageError", "detail": str(exc)}, 2
        print(f"ncad: {exc}", file=sys.stderr)
    _emit(doc, output)
    return code


def main() -> None:
    sys.exit(run())

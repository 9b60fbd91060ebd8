"""JSON codecs.  Scalars are exact ``"p/q"`` strings.

Schemas::

    matrix      {"rows": n, "cols": m, "entries": [["p/q", ...], ...]}
    point       {"dim": d, "components": [matrix, ...]}
    polynomial  {"order": k, "xdims": [...], "zdims": [...],
                 "terms": [{"coeff": "p/q", "w": [[...], ...], "v": [...]}]}
    multilinear {"arity": k, "argshapes": [[rows, cols, dim], ...],
                 "outshape": [rows, cols], "coeffs": matrix}
    points      {"x": [point, ...], "z": [point, ...]}
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import NcadError, SchemaError
from .exactalg import Matrix, PointMatrix
from .multilinear import MultiLinearMap
from .ncpoly import NcPolynomial


def encode_scalar(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decode_scalar(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise SchemaError(f"scalar must be an integer or 'p/q' string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar {v!r}") from exc


def encode_matrix(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[encode_scalar(v) for v in row] for row in m.tolist()]}


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise SchemaError(f"{what} missing keys {missing}")


def decode_matrix(obj) -> Matrix:
    _require(obj, ("rows", "cols", "entries"), "matrix")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not isinstance(entries, list) or len(entries) != rows or any(
            not isinstance(r, list) or len(r) != cols for r in entries):
        raise SchemaError(f"matrix entries do not form a {rows}x{cols} grid")
    return Matrix.from_fractions(rows, cols, [decode_scalar(v) for r in entries for v in r])


def encode_point(p: PointMatrix) -> dict:
    return {"dim": p.dim, "components": [encode_matrix(c) for c in p.components]}


def decode_point(obj) -> PointMatrix:
    if isinstance(obj, dict) and "entries" in obj:
        return PointMatrix([decode_matrix(obj)])
    _require(obj, ("dim", "components"), "point")
    comps = [decode_matrix(c) for c in obj["components"]]
    if len(comps) != obj["dim"]:
        raise SchemaError(f"point declares dim {obj['dim']} but has {len(comps)} components")
    try:
        return PointMatrix(comps)
    except NcadError as exc:
        raise SchemaError(str(exc)) from exc


def encode_poly(p: NcPolynomial) -> dict:
    return {
        "order": p.order,
        "xdims": list(p.xdims),
        "zdims": list(p.zdims),
        "terms": [{"coeff": encode_scalar(c), "w": [list(w) for w in words], "v": list(vs)}
                  for (words, vs), c in p.terms.items()],
    }


def decode_poly(obj) -> NcPolynomial:
    _require(obj, ("order", "xdims", "zdims", "terms"), "polynomial")
    if len(obj["zdims"]) != obj["order"]:
        raise SchemaError("polynomial order does not match zdims")
    terms = []
    for t in obj["terms"]:
        _require(t, ("coeff", "w"), "term")
        terms.append(((t["w"], t.get("v", [])), decode_scalar(t["coeff"])))
    try:
        return NcPolynomial(obj["xdims"], obj["zdims"], terms)
    except NcadError as exc:
        raise SchemaError(str(exc)) from exc


def encode_multilinear(g: MultiLinearMap) -> dict:
    return {"arity": g.arity, "argshapes": [list(a) for a in g.argshapes],
            "outshape": list(g.outshape), "coeffs": encode_matrix(g.coeffs)}


def decode_multilinear(obj) -> MultiLinearMap:
    _require(obj, ("argshapes", "outshape", "coeffs"), "multilinear map")
    return MultiLinearMap(obj["argshapes"], obj["outshape"], decode_matrix(obj["coeffs"]))


def decode_points(obj) -> tuple:
    """``{"x": [...], "z": [...]}``; a bare point is shorthand for one x-point."""
    if isinstance(obj, dict) and "x" in obj:
        return [decode_point(p) for p in obj["x"]], [decode_point(p) for p in obj.get("z", [])]
    return [decode_point(obj)], []


def encode_any(x):
    """Best-effort encoding for report witnesses and nested results."""
    from .report import Report

    if isinstance(x, Fraction):
        return encode_scalar(x)
    if isinstance(x, Matrix):
        return encode_matrix(x)
    if isinstance(x, PointMatrix):
        return encode_point(x)
    if isinstance(x, NcPolynomial):
        return encode_poly(x)
    if isinstance(x, MultiLinearMap):
        return encode_multilinear(x)
    if isinstance(x, Report):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): encode_any(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode_any(v) for v in x]
    return x


def load(path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"

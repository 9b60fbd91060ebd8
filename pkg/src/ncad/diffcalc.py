"""Difference-differential operators on nc polynomials and nc-function oracles.

``delta_sym`` splits words symbolically.  ``delta_oracle`` evaluates the
underlying function on a block upper triangular point and reads off the mixed
block, with the neighbouring direction blocks zeroed so that only the
difference-differential term survives.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import ComponentOutOfRange, ShapeMismatch, SlotOutOfRange
from .exactalg import (
    Matrix,
    PointMatrix,
    as_point,
    block_upper,
    point_hstack,
    point_vstack,
    to_scalar,
)
from .ncpoly import NcPolynomial, check_arguments, evaluate
from .report import Report


class NcOracle:
    """An order-k nc function given by an evaluator ``(xs, zs) -> Matrix``.

    The evaluator must be defined for every size, respect direct sums and
    similarities, and be k-linear in the directions; :mod:`ncad.testkit` checks
    this on samples.  ``poly`` is set when the oracle is the evaluation of a
    known polynomial, which lets callers run global symbolic checks.
    """

    def __init__(self, xdims: Sequence[int], zdims: Sequence[int], evaluator: Callable,
                 *, poly: NcPolynomial | None = None, name: str = "oracle"):
        self.xdims = tuple(xdims)
        self.zdims = tuple(zdims)
        if len(self.xdims) != len(self.zdims) + 1:
            raise ShapeMismatch("order-k oracle needs k+1 x-dims and k z-dims")
        self.order = len(self.zdims)
        self.evaluator = evaluator
        self.poly = poly
        self.name = name

    def __call__(self, xs, zs=()) -> Matrix:
        xs, zs, _ = check_arguments(self.xdims, self.zdims, xs, zs)
        return self.evaluator(xs, zs)

    def __repr__(self) -> str:
        return f"NcOracle({self.name}, order={self.order}, xdims={self.xdims}, zdims={self.zdims})"

    @classmethod
    def from_poly(cls, p: NcPolynomial, name: str | None = None) -> "NcOracle":
        return cls(p.xdims, p.zdims, lambda xs, zs: evaluate(p, xs, zs), poly=p,
                   name=name or p.pretty())

    @classmethod
    def zero(cls, xdims, zdims) -> "NcOracle":
        return cls(xdims, zdims, lambda xs, zs: Matrix.zeros(xs[0].rows, xs[-1].rows), name="0")

    @classmethod
    def constant(cls, c, dim: int = 1) -> "NcOracle":
        """Order-0 oracle X -> c I."""
        c = to_scalar(c)
        return cls((dim,), (), lambda xs, zs: Matrix.scalar(xs[0].rows, c), name=f"{c}*I")


def delta_signature(xdims, zdims, j: int) -> tuple:
    """x- and z-dims of the j-th difference-differential of an order-k function."""
    k = len(zdims)
    if not 0 <= j <= k:
        raise SlotOutOfRange(f"slot {j} outside 0..{k}")
    xdims, zdims = tuple(xdims), tuple(zdims)
    return (xdims[:j + 1] + (xdims[j],) + xdims[j + 1:],
            zdims[:j] + (xdims[j],) + zdims[j:])


def delta_sym(q: NcPolynomial, j: int) -> NcPolynomial:
    """Symbolic j-th difference-differential: split each word w_j at every letter."""
    xdims, zdims = delta_signature(q.xdims, q.zdims, j)
    terms = []
    for (words, vs), c in q.terms.items():
        w = words[j]
        for i, letter in enumerate(w):
            new_words = words[:j] + (w[:i], w[i + 1:]) + words[j + 1:]
            new_vs = vs[:j] + (letter,) + vs[j:]
            terms.append(((new_words, new_vs), c))
    return NcPolynomial(xdims, zdims, terms)


def _delta_evaluator(f: NcOracle, j: int) -> Callable:
    k = f.order

    def run(xs, zs):
        x1, x2, d = xs[j], xs[j + 1], zs[j]
        n1, n2 = x1.rows, x2.rows
        pts = list(xs[:j]) + [block_upper(x1, d, x2)] + list(xs[j + 2:])
        if k == 0:
            return f(pts, []).block(0, n1, n1, n1 + n2)
        if j == 0:
            z1 = zs[1]
            stacked = point_vstack([PointMatrix.zeros(z1.dim, n1, z1.cols), z1])
            out = f(pts, [stacked] + list(zs[2:]))
            return out.block(0, n1, 0, out.cols)
        if j == k:
            zk = zs[k - 1]
            wide = point_hstack([zk, PointMatrix.zeros(zk.dim, zk.rows, n2)])
            out = f(pts, list(zs[:k - 1]) + [wide])
            return out.block(0, out.rows, n1, n1 + n2)
        zj, zj1 = zs[j - 1], zs[j + 1]
        wide = point_hstack([zj, PointMatrix.zeros(zj.dim, zj.rows, n2)])
        tall = point_vstack([PointMatrix.zeros(zj1.dim, n1, zj1.cols), zj1])
        return f(pts, list(zs[:j - 1]) + [wide, tall] + list(zs[j + 2:]))

    return run


def delta_oracle(f: NcOracle, j: int) -> NcOracle:
    """The order-(k+1) oracle of the j-th difference-differential of ``f``, computed numerically."""
    xdims, zdims = delta_signature(f.xdims, f.zdims, j)
    return NcOracle(xdims, zdims, _delta_evaluator(f, j), name=f"D{j}({f.name})")


def delta_num(f: NcOracle, j: int, xs, zs, direction) -> Matrix:
    """j-th difference-differential of ``f`` at split points.

    ``xs`` holds the k+2 points ``X^0..X^{j-1}, X^j_1, X^j_2, X^{j+1}..X^k``;
    ``zs`` the k original directions ``Z^1..Z^k``; ``direction`` is inserted
    between ``Z^j`` and ``Z^{j+1}``.
    """
    zs = list(zs)
    return delta_oracle(f, j)(xs, zs[:j] + [as_point(direction)] + zs[j:])


def delta_directional(f: NcOracle, j: int, alpha: int, xs, zs, a: Matrix) -> Matrix:
    """j-th difference-differential along coordinate ``alpha`` (1-based) of slot j."""
    d = f.xdims[j] if 0 <= j <= f.order else None
    if d is None:
        raise SlotOutOfRange(f"slot {j} outside 0..{f.order}")
    if not 1 <= alpha <= d:
        raise ComponentOutOfRange(f"component {alpha} outside 1..{d}")
    zero = Matrix.zeros(a.rows, a.cols)
    comps = [zero] * d
    comps[alpha - 1] = a
    return delta_num(f, j, xs, zs, PointMatrix(comps))


def check_delta_commutation(g: NcPolynomial, i: int, j: int) -> Report:
    """Exact symbolic check that D_{j+1} D_i g == D_i D_j g for i <= j."""
    if not 0 <= i <= j <= g.order:
        raise SlotOutOfRange(f"need 0 <= i <= j <= {g.order}, got i={i}, j={j}")
    lhs = delta_sym(delta_sym(g, i), j + 1)
    rhs = delta_sym(delta_sym(g, j), i)
    passed = lhs == rhs
    witness = None if passed else {"lhs": lhs, "rhs": rhs}
    return Report(f"delta-commutation(i={i}, j={j})", passed, checked=1, witness=witness)

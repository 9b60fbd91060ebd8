"""Seeded generators and exact structural checkers for nc functions."""

from __future__ import annotations

import random
from fractions import Fraction

from .diffcalc import NcOracle
from .errors import OrderMismatch
from .exactalg import Matrix, PointMatrix, direct_sum, hstack, point_hstack, point_vstack, vstack
from .ncpoly import NcPolynomial
from .report import Report


class RngSpec:
    """A seeded source of small exact rationals; equal seeds give equal sequences."""

    def __init__(self, seed: int = 0, num_bound: int = 3, den_bound: int = 2):
        self.seed = seed
        self.num_bound = num_bound
        self.den_bound = den_bound
        self.random = random.Random(seed)

    def integer(self, lo: int, hi: int) -> int:
        return self.random.randint(lo, hi)

    def choice(self, seq):
        return self.random.choice(seq)

    def scalar(self, nonzero: bool = False) -> Fraction:
        while True:
            v = Fraction(self.integer(-self.num_bound, self.num_bound), self.integer(1, self.den_bound))
            if v or not nonzero:
                return v

    def matrix(self, rows: int, cols: int) -> Matrix:
        return Matrix.from_fractions(rows, cols, [self.scalar() for _ in range(rows * cols)])

    def point(self, dim: int, rows: int, cols: int | None = None) -> PointMatrix:
        cols = rows if cols is None else cols
        return PointMatrix([self.matrix(rows, cols) for _ in range(dim)])

    def invertible(self, n: int, steps: int | None = None) -> tuple:
        """(S, S^-1) from random row additions, swaps and sign flips.

        For n > 1 the first step is always a row addition, so S is never a
        signed permutation.
        """
        s, inv = Matrix.identity(n), Matrix.identity(n)
        for step in range(steps if steps is not None else 2 * n):
            if n == 1:
                kind = 2
            else:
                kind = 0 if step == 0 else self.choice((0, 0, 1, 2))
            if kind == 0:
                i, j = self.random.sample(range(n), 2)
                a = self.scalar(nonzero=True)
                e = Matrix.identity(n) + _unit(n, i, j) * a
                e_inv = Matrix.identity(n) - _unit(n, i, j) * a
            elif kind == 1:
                i, j = self.random.sample(range(n), 2)
                e = e_inv = _swap(n, i, j)
            else:
                i = self.integer(0, n - 1)
                e = e_inv = Matrix.identity(n) - _unit(n, i, i) * 2
            s, inv = e @ s, inv @ e_inv
        return s, inv

    def points(self, xdims, zdims, sizes) -> tuple:
        """Random square points of the given sizes and conforming directions."""
        xs = [self.point(d, n) for d, n in zip(xdims, sizes)]
        zs = [self.point(d, sizes[j], sizes[j + 1]) for j, d in enumerate(zdims)]
        return xs, zs


def _unit(n: int, i: int, j: int) -> Matrix:
    num = [0] * (n * n)
    num[i * n + j] = 1
    return Matrix(n, n, num)


def _swap(n: int, i: int, j: int) -> Matrix:
    m = Matrix.identity(n)
    return m - _unit(n, i, i) - _unit(n, j, j) + _unit(n, i, j) + _unit(n, j, i)


def random_poly(order: int, xdims, zdims, degree: int, terms: int, rng: RngSpec) -> NcPolynomial:
    """Up to ``terms`` monomials with total x-degree at most ``degree``."""
    xdims, zdims = tuple(xdims), tuple(zdims)
    if len(xdims) != order + 1 or len(zdims) != order:
        raise OrderMismatch(f"order {order} needs {order + 1} x-dims and {order} z-dims")
    out = []
    for _ in range(terms):
        total = rng.integer(0, degree)
        cuts = sorted(rng.integer(0, total) for _ in range(order))
        lengths = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        words = [tuple(rng.integer(1, xdims[j]) for _ in range(n)) for j, n in enumerate(lengths)]
        vs = tuple(rng.integer(1, d) for d in zdims)
        out.append(((words, vs), rng.scalar(nonzero=True)))
    return NcPolynomial(xdims, zdims, out)


def perturb_coefficient(p: NcPolynomial, j: int, rng: RngSpec):
    """Add a nonzero amount to one coefficient of p whose slot-j merge class has length >= 2.

    Singleton classes stay integrable under any change, so they are skipped;
    returns None when p has no eligible term.
    """
    eligible = [key for key in p.terms if len(key[0][j]) + len(key[0][j + 1]) >= 1]
    if not eligible:
        return None
    key = rng.choice(eligible)
    return p + NcPolynomial(p.xdims, p.zdims, {key: rng.scalar(nonzero=True)})


def random_idempotent(n: int, rng: RngSpec, rank: int | None = None) -> Matrix:
    """S E S^-1 with E a diagonal 0/1 matrix."""
    rank = rng.integer(0, n) if rank is None else rank
    diag = [1] * rank + [0] * (n - rank)
    rng.random.shuffle(diag)
    e = Matrix(n, n, [diag[i] if i == j else 0 for i in range(n) for j in range(n)])
    s, inv = rng.invertible(n)
    return s @ e @ inv


def random_eigen_triple(n: int, rng: RngSpec) -> tuple:
    """(A, B, C, lam) with A B = lam A and B C = lam C, built from an eigenbasis of B."""
    values = [rng.scalar() for _ in range(n)]
    lam = rng.choice(values)
    s, inv = rng.invertible(n)
    b = s @ Matrix.from_fractions(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)]) @ inv
    idx = [i for i, v in enumerate(values) if v == lam]
    p, q = rng.integer(1, n), rng.integer(1, n)
    left_rows = Matrix.from_fractions(len(idx), n, [inv[i, c] for i in idx for c in range(n)])
    right_cols = Matrix.from_fractions(n, len(idx), [s[r, i] for r in range(n) for i in idx])
    a = rng.matrix(p, len(idx)) @ left_rows
    c = right_cols @ rng.matrix(len(idx), q)
    return a, b, c, lam


def entrywise_square_oracle(dim: int = 1) -> NcOracle:
    """Order-0 map squaring every entry; respects direct sums but not similarities."""

    def run(xs, zs):
        x = xs[0].components[0]
        return Matrix.from_fractions(x.rows, x.cols, [v * v for v in x.flat()])

    return NcOracle((dim,), (), run, name="entrywise-square")


# -- structure checks ------------------------------------------------------


def _direct_sum_case(f: NcOracle, j: int, xs, zs, xs2, zs2):
    """Both sides of the direct-sum axiom with slot j replaced by X^j (+) X'^j."""
    k = f.order
    xa = xs[:j] + [direct_sum(xs[j], xs2[j])] + xs[j + 1:]
    xb = xs[:j] + [xs2[j]] + xs[j + 1:]
    if k == 0:
        return f(xa, []), direct_sum(f(xs, []), f(xs2, []))
    if j == 0:
        za = [point_vstack([zs[0], zs2[0]])] + zs[1:]
        lhs = f(xa, za)
        rhs = vstack([f(xs, zs), f(xb, [zs2[0]] + zs[1:])])
    elif j == k:
        za = zs[:-1] + [point_hstack([zs[-1], zs2[-1]])]
        lhs = f(xa, za)
        rhs = hstack([f(xs, zs), f(xb, zs[:-1] + [zs2[-1]])])
    else:
        za = zs[:j - 1] + [point_hstack([zs[j - 1], zs2[j - 1]]), point_vstack([zs[j], zs2[j]])] + zs[j + 1:]
        lhs = f(xa, za)
        rhs = f(xs, zs) + f(xb, zs[:j - 1] + [zs2[j - 1], zs2[j]] + zs[j + 1:])
    return lhs, rhs


def _similarity_case(f: NcOracle, j: int, xs, zs, s: Matrix, inv: Matrix):
    k = f.order
    xa = xs[:j] + [xs[j].lmul(s).rmul(inv)] + xs[j + 1:]
    za = list(zs)
    if j > 0:
        za[j - 1] = za[j - 1].rmul(inv)
    if j < k:
        za[j] = za[j].lmul(s)
    lhs = f(xa, za)
    rhs = f(xs, zs)
    if j == 0:
        rhs = s @ rhs
    if j == k:
        rhs = rhs @ inv
    return lhs, rhs


def _intertwining_case(f: NcOracle, j: int, xs, zs, w: PointMatrix, s: Matrix, inv: Matrix, wide):
    """With X2 = S (X1 (+) W) S^-1 and T = S [I; 0], so T X1 = X2 T.

    ``wide`` replaces Z^j by a direction with the column count of X2 (unused when j = 0).
    """
    k = f.order
    n1 = xs[j].rows
    n2 = n1 + w.rows
    t = s @ Matrix.identity(n2).block(0, n2, 0, n1)
    x2 = direct_sum(xs[j], w).lmul(s).rmul(inv)
    big = xs[:j] + [x2] + xs[j + 1:]
    if k == 0:
        return f(big, []) @ t, t @ f(xs, [])
    zl, zr = list(zs), list(zs)
    if j > 0:
        zl[j - 1] = wide
        zr[j - 1] = wide.rmul(t)
    if j < k:
        zl[j] = zs[j].lmul(t)
    lhs = f(big, zl)
    rhs = f(xs, zr)
    if j == 0:
        rhs = t @ rhs
    if j == k:
        lhs = lhs @ t
    return lhs, rhs


def check_respects_structure(f: NcOracle, rng: RngSpec, samples: int = 2, max_size: int = 2) -> Report:
    """Exact direct-sum, similarity and intertwining checks in every slot on random data."""
    k = f.order
    checked = 0
    for t in range(samples):
        # first sample at full size so similarities are not just scalars
        sizes = [max_size if t == 0 else rng.integer(1, max_size) for _ in range(k + 1)]
        xs, zs = rng.points(f.xdims, f.zdims, sizes)
        for j in range(k + 1):
            sizes2 = list(sizes)
            sizes2[j] = rng.integer(1, max_size)
            xs2, zs2 = rng.points(f.xdims, f.zdims, sizes2)
            cases = [("direct-sum", lambda: _direct_sum_case(f, j, xs, zs, xs2, zs2))]
            s, inv = rng.invertible(sizes[j])
            cases.append(("similarity", lambda: _similarity_case(f, j, xs, zs, s, inv)))
            w = rng.point(f.xdims[j], rng.integer(1, max_size))
            s2, inv2 = rng.invertible(sizes[j] + w.rows)
            wide = rng.point(f.zdims[j - 1], sizes[j - 1], sizes[j] + w.rows) if j > 0 else None
            cases.append(("intertwining", lambda: _intertwining_case(f, j, xs, zs, w, s2, inv2, wide)))
            for name, case in cases:
                lhs, rhs = case()
                checked += 1
                if lhs != rhs:
                    return Report("respects-structure", False, checked,
                                  witness={"axiom": name, "slot": j, "x": xs, "z": zs, "lhs": lhs, "rhs": rhs})
    return Report("respects-structure", True, checked, sampled=True)

"""Order-k nc polynomials.

A monomial of order k is

    c * (x^0)^{w_0} z^1_{v_1} (x^1)^{w_1} ... z^k_{v_k} (x^k)^{w_k}

where ``w_j`` is a word over the ``d_j`` letters of the j-th x-slot and
``v_j`` a single letter of the ``d'_j`` letters of the j-th z-slot.  Letters
are 1-based.  A polynomial is stored as a mapping from the key
``(words, zletters)`` to its nonzero coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimMismatch, OrderMismatch, ShapeMismatch
from .exactalg import Matrix, PointMatrix, as_point, to_scalar

Word = tuple
Key = tuple  # (tuple of k+1 words, tuple of k z-letters)


def _sort_key(key: Key):
    words, zs = key
    interleaved = [words[0]]
    for j, v in enumerate(zs):
        interleaved.append(v)
        interleaved.append(words[j + 1])
    return (sum(len(w) for w in words), tuple(interleaved))


class NcPolynomial:
    """Immutable order-k nc polynomial with rational coefficients, always canonical."""

    __slots__ = ("order", "xdims", "zdims", "terms")

    def __init__(self, xdims: Sequence[int], zdims: Sequence[int], terms: Mapping | Sequence = ()):
        xdims, zdims = tuple(xdims), tuple(zdims)
        if len(xdims) != len(zdims) + 1:
            raise OrderMismatch(f"order-k polynomial needs k+1 x-dims and k z-dims, got {xdims}, {zdims}")
        if any(d < 1 for d in xdims + zdims):
            raise DimMismatch("alphabet sizes must be positive")
        self.order = len(zdims)
        self.xdims = xdims
        self.zdims = zdims
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for key, coeff in items:
            key = self._check_key(key)
            acc[key] = acc.get(key, Fraction(0)) + to_scalar(coeff)
        self.terms = {k: acc[k] for k in sorted(acc, key=_sort_key) if acc[k] != 0}

    def _check_key(self, key) -> Key:
        words, zs = key
        words = tuple(tuple(w) for w in words)
        zs = tuple(zs)
        if len(words) != self.order + 1 or len(zs) != self.order:
            raise OrderMismatch(f"monomial {key!r} does not have order {self.order}")
        for w, d in zip(words, self.xdims):
            if any(not 1 <= a <= d for a in w):
                raise DimMismatch(f"letter out of range 1..{d} in word {w}")
        for v, d in zip(zs, self.zdims):
            if not 1 <= v <= d:
                raise DimMismatch(f"z-letter {v} out of range 1..{d}")
        return (words, zs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, xdims, zdims) -> "NcPolynomial":
        return cls(xdims, zdims, {})

    @classmethod
    def monomial(cls, xdims, zdims, words, zletters=(), coeff=1) -> "NcPolynomial":
        return cls(xdims, zdims, [((words, zletters), coeff)])

    # -- algebra ------------------------------------------------------

    def same_signature(self, other: "NcPolynomial") -> bool:
        return self.xdims == other.xdims and self.zdims == other.zdims

    def _require_same(self, other: "NcPolynomial") -> None:
        if not self.same_signature(other):
            raise OrderMismatch(
                f"signatures differ: {self.xdims}/{self.zdims} vs {other.xdims}/{other.zdims}")

    def __add__(self, other: "NcPolynomial") -> "NcPolynomial":
        self._require_same(other)
        return NcPolynomial(self.xdims, self.zdims, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "NcPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "NcPolynomial") -> "NcPolynomial":
        return self + (-other)

    def scale(self, c) -> "NcPolynomial":
        c = to_scalar(c)
        return NcPolynomial(self.xdims, self.zdims, {k: c * v for k, v in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self.same_signature(other) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.xdims, self.zdims, tuple(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(len(w) for w in k[0]) for k in self.terms), default=0)

    def __repr__(self) -> str:
        return f"NcPolynomial({self.xdims}, {self.zdims}, {self.pretty()!r})"

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        xs = "xyuvw"
        parts = []
        for (words, zs), c in self.terms.items():
            factors = []
            for j, w in enumerate(words):
                if j > 0:
                    factors.append(f"z{j}_{zs[j - 1]}")
                name = xs[j] if j < len(xs) else f"x{j}"
                factors.extend(f"{name}{a}" for a in w)
            mono = "*".join(factors) or "1"
            parts.append(mono if c == 1 else f"({c})*{mono}")
        return " + ".join(parts)

    # -- evaluation ---------------------------------------------------

    def __call__(self, xs, zs=()) -> Matrix:
        return evaluate(self, xs, zs)


def canonicalize(p: NcPolynomial) -> NcPolynomial:
    """Merged, zero-free, sorted form.  Polynomials are canonical on construction."""
    return NcPolynomial(p.xdims, p.zdims, list(p.terms.items()))


def add(p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
    return p + q


def scale(c, p: NcPolynomial) -> NcPolynomial:
    return p.scale(c)


def check_arguments(xdims, zdims, xs, zs) -> tuple:
    """Validate and normalize evaluation arguments; returns (xs, zs, sizes)."""
    xs = [as_point(x) for x in xs]
    zs = [as_point(z) for z in zs]
    k = len(zdims)
    if len(xs) != k + 1 or len(zs) != k:
        raise ShapeMismatch(f"order {k} needs {k + 1} points and {k} directions, got {len(xs)} and {len(zs)}")
    for j, (x, d) in enumerate(zip(xs, xdims)):
        if x.rows != x.cols:
            raise ShapeMismatch(f"point {j} is not square: {x.shape}")
        if x.dim != d:
            raise DimMismatch(f"point {j} has dim {x.dim}, expected {d}")
    sizes = [x.rows for x in xs]
    for j, (z, d) in enumerate(zip(zs, zdims)):
        if z.dim != d:
            raise DimMismatch(f"direction {j + 1} has dim {z.dim}, expected {d}")
        if z.shape != (sizes[j], sizes[j + 1]):
            raise ShapeMismatch(f"direction {j + 1} has shape {z.shape}, expected {(sizes[j], sizes[j + 1])}")
    return xs, zs, sizes


class _WordPowers:
    """Memoized X^w for words over one point; X^() is the identity."""

    def __init__(self, x: PointMatrix):
        self.x = x
        self.cache = {(): Matrix.identity(x.rows)}

    def __call__(self, w: Word) -> Matrix:
        got = self.cache.get(w)
        if got is None:
            got = self(w[:-1]) @ self.x.components[w[-1] - 1]
            self.cache[w] = got
        return got


def evaluate(p: NcPolynomial, xs, zs=()) -> Matrix:
    """Sum of c * X0^{w0} Z1_{v1} X1^{w1} ... Zk_{vk} Xk^{wk}; an n_0 x n_k matrix."""
    xs, zs, sizes = check_arguments(p.xdims, p.zdims, xs, zs)
    powers = [_WordPowers(x) for x in xs]
    out = Matrix.zeros(sizes[0], sizes[-1])
    for (words, vs), c in p.terms.items():
        acc = powers[0](words[0])
        for j, v in enumerate(vs):
            acc = acc @ zs[j].components[v - 1]
            if words[j + 1]:
                acc = acc @ powers[j + 1](words[j + 1])
        out = out + acc * c
    return out

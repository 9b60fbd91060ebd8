"""Exact rational matrices and d-tuples of matrices (points of (R^d)_nc).

A :class:`Matrix` stores an integer grid over one positive common
denominator, kept in lowest terms, so products reduce to integer matrix
multiplication (see :mod:`ncad._backend`).  Indices passed to the public
constructors :func:`matrix_unit` and :meth:`PointMatrix.component` are
1-based; everything else is 0-based Python indexing.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ._backend import content, int_matmul
from .errors import ComponentOutOfRange, IndexOutOfRange, ShapeMismatch, SingularMatrix

Scalar = Fraction


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class Matrix:
    """Immutable dense rows x cols matrix over the rationals."""

    __slots__ = ("rows", "cols", "_num", "_den", "_hash")

    def __init__(self, rows: int, cols: int, num: list, den: int = 1, *, _reduced=False):
        if rows < 0 or cols < 0 or len(num) != rows * cols:
            raise ShapeMismatch(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(num)}")
        if den <= 0:
            raise ValueError("denominator must be positive")
        if not _reduced and den != 1:
            g = content(num, den)
            if g != 1:
                num = [v // g for v in num]
                den //= g
        self.rows = rows
        self.cols = cols
        self._num = num
        self._den = den
        self._hash = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [[to_scalar(v) for v in r] for r in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        if any(len(r) != m for r in rows):
            raise ShapeMismatch("ragged rows")
        flat = [v for r in rows for v in r]
        return cls.from_fractions(n, m, flat)

    @classmethod
    def from_fractions(cls, rows: int, cols: int, values: Iterable) -> "Matrix":
        values = [to_scalar(v) for v in values]
        den = 1
        for v in values:
            if v.denominator != 1:
                den = _lcm(den, v.denominator)
        num = [v.numerator * (den // v.denominator) for v in values]
        return cls(rows, cols, num, den)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols), 1, _reduced=True)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        num = [0] * (n * n)
        for i in range(n):
            num[i * n + i] = 1
        return cls(n, n, num, 1, _reduced=True)

    @classmethod
    def scalar(cls, n: int, c) -> "Matrix":
        return cls.identity(n) * c

    # -- access -------------------------------------------------------

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, idx) -> Fraction:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return Fraction(self._num[i * self.cols + j], self._den)

    def flat(self) -> list:
        d = self._den
        return [Fraction(v, d) for v in self._num]

    def tolist(self) -> list:
        f = self.flat()
        return [f[i * self.cols:(i + 1) * self.cols] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def nonzero_entries(self):
        """Yield ``(i, j, value)`` for each nonzero entry."""
        c = self.cols
        for idx, v in enumerate(self._num):
            if v:
                yield idx // c, idx % c, Fraction(v, self._den)

    # -- arithmetic ---------------------------------------------------

    def _check_same(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same(other)
        if self._den == other._den:
            return Matrix(self.rows, self.cols, [a + b for a, b in zip(self._num, other._num)], self._den)
        den = _lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return Matrix(self.rows, self.cols, [a * fa + b * fb for a, b in zip(self._num, other._num)], den)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self._num], self._den, _reduced=True)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = to_scalar(c)
        if c == 0:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix(self.rows, self.cols, [a * c.numerator for a in self._num], self._den * c.denominator)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        num = int_matmul(self._num, other._num, self.rows, self.cols, other.cols)
        return Matrix(self.rows, other.cols, num, self._den * other._den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self._den == other._den and self._num == other._num)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._den, tuple(self._num)))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.tolist())
        return f"Matrix([{body}])"

    def pow(self, e: int) -> "Matrix":
        out = Matrix.identity(self.rows)
        for _ in range(e):
            out = out @ self
        return out

    def transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        num = [self._num[i * c + j] for j in range(c) for i in range(r)]
        return Matrix(c, r, num, self._den, _reduced=True)

    # -- block structure ----------------------------------------------

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Submatrix rows r0:r1, cols c0:c1."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise IndexOutOfRange(f"block [{r0}:{r1}, {c0}:{c1}] outside {self.shape}")
        c = self.cols
        num = [v for i in range(r0, r1) for v in self._num[i * c + c0:i * c + c1]]
        return Matrix(r1 - r0, c1 - c0, num, self._den)

    def kron(self, other: "Matrix") -> "Matrix":
        r1, c1, r2, c2 = self.rows, self.cols, other.rows, other.cols
        a, b = self._num, other._num
        num = [a[i * c1 + j] * b[k * c2 + l]
               for i in range(r1) for k in range(r2)
               for j in range(c1) for l in range(c2)]
        return Matrix(r1 * r2, c1 * c2, num, self._den * other._den)

    def reshape(self, rows: int, cols: int) -> "Matrix":
        """Row-major reshape."""
        return Matrix(rows, cols, list(self._num), self._den, _reduced=True)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ShapeMismatch("inverse of a non-square matrix")
        n = self.rows
        a = self.tolist()
        inv = Matrix.identity(n).tolist()
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                raise SingularMatrix("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = a[col][col]
            a[col] = [v / p for v in a[col]]
            inv[col] = [v / p for v in inv[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return Matrix.from_rows(inv)


def _common(blocks: Sequence[Matrix]) -> tuple:
    den = 1
    for b in blocks:
        den = _lcm(den, b._den)
    return den, [[v * (den // b._den) for v in b._num] for b in blocks]


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ShapeMismatch("empty hstack")
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ShapeMismatch("hstack row counts differ")
    den, nums = _common(blocks)
    num = []
    for i in range(rows):
        for b, bn in zip(blocks, nums):
            num.extend(bn[i * b.cols:(i + 1) * b.cols])
    return Matrix(rows, sum(b.cols for b in blocks), num, den)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ShapeMismatch("empty vstack")
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ShapeMismatch("vstack column counts differ")
    den, nums = _common(blocks)
    return Matrix(sum(b.rows for b in blocks), cols, [v for bn in nums for v in bn], den)


def block_matrix(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(row) for row in grid])


def matrix_unit(n: int, i: int, j: int, m: int | None = None) -> Matrix:
    """E_ij in R^{n x m} (m defaults to n), 1-based indices."""
    m = n if m is None else m
    if not (1 <= i <= n and 1 <= j <= m):
        raise IndexOutOfRange(f"unit ({i}, {j}) outside {n}x{m}")
    num = [0] * (n * m)
    num[(i - 1) * m + (j - 1)] = 1
    return Matrix(n, m, num, 1, _reduced=True)


class PointMatrix:
    """A d-tuple of equally shaped rational matrices: one element of (R^d)^{rows x cols}."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Matrix]):
        components = tuple(components)
        if not components:
            raise ShapeMismatch("a point needs at least one component")
        shape = components[0].shape
        if any(c.shape != shape for c in components):
            raise ShapeMismatch("components differ in shape")
        self.components = components

    @classmethod
    def of(cls, *mats: Matrix) -> "PointMatrix":
        return cls(mats)

    @classmethod
    def from_rows(cls, *grids) -> "PointMatrix":
        return cls([Matrix.from_rows(g) for g in grids])

    @classmethod
    def zeros(cls, dim: int, rows: int, cols: int) -> "PointMatrix":
        return cls([Matrix.zeros(rows, cols)] * dim)

    @classmethod
    def unit(cls, dim: int, rows: int, cols: int, comp: int, i: int, j: int) -> "PointMatrix":
        """Single 1 in component ``comp`` at entry (i, j); all 0-based."""
        z = Matrix.zeros(rows, cols)
        comps = [z] * dim
        comps[comp] = matrix_unit(rows, i + 1, j + 1, cols)
        return cls(comps)

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def rows(self) -> int:
        return self.components[0].rows

    @property
    def cols(self) -> int:
        return self.components[0].cols

    @property
    def shape(self) -> tuple:
        return self.components[0].shape

    def component(self, alpha: int) -> Matrix:
        """The alpha-th coordinate matrix, 1-based."""
        if not 1 <= alpha <= self.dim:
            raise ComponentOutOfRange(f"component {alpha} of a dim-{self.dim} point")
        return self.components[alpha - 1]

    def __getitem__(self, k: int) -> Matrix:
        return self.components[k]

    def __iter__(self):
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check(self, other: "PointMatrix") -> None:
        if self.dim != other.dim or self.shape != other.shape:
            raise ShapeMismatch(f"points dim {self.dim} {self.shape} vs dim {other.dim} {other.shape}")

    def __add__(self, other: "PointMatrix") -> "PointMatrix":
        self._check(other)
        return PointMatrix([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "PointMatrix") -> "PointMatrix":
        self._check(other)
        return PointMatrix([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "PointMatrix":
        return PointMatrix([-a for a in self.components])

    def __mul__(self, c) -> "PointMatrix":
        return PointMatrix([a * c for a in self.components])

    __rmul__ = __mul__

    def lmul(self, s: Matrix) -> "PointMatrix":
        """S X, componentwise."""
        return PointMatrix([s @ a for a in self.components])

    def rmul(self, s: Matrix) -> "PointMatrix":
        """X S, componentwise."""
        return PointMatrix([a @ s for a in self.components])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "PointMatrix":
        return PointMatrix([a.block(r0, r1, c0, c1) for a in self.components])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointMatrix):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"PointMatrix({list(self.components)!r})"

    def vec(self) -> list:
        """Row-major flattening, component-major: index (comp, i, j)."""
        return [v for c in self.components for v in c.flat()]


def as_point(x) -> PointMatrix:
    if isinstance(x, PointMatrix):
        return x
    if isinstance(x, Matrix):
        return PointMatrix((x,))
    return PointMatrix((Matrix.from_rows(x),))


def commutator(s: Matrix, y: PointMatrix) -> PointMatrix:
    """S Y - Y S, componentwise."""
    return PointMatrix([s @ c - c @ s for c in y.components])


def kron_identity(m: int, y) -> PointMatrix | Matrix:
    """I_m (x) Y, componentwise for points."""
    if m < 1:
        raise IndexOutOfRange("amplification factor must be >= 1")
    if isinstance(y, Matrix):
        return Matrix.identity(m).kron(y)
    return PointMatrix([Matrix.identity(m).kron(c) for c in y.components])


def direct_sum(x, w):
    if isinstance(x, Matrix):
        return block_matrix([[x, Matrix.zeros(x.rows, w.cols)], [Matrix.zeros(w.rows, x.cols), w]])
    return block_upper(x, PointMatrix.zeros(x.dim, x.rows, w.cols), w)


def block_upper(x: PointMatrix, z: PointMatrix, w: PointMatrix) -> PointMatrix:
    """[[X, Z], [0, W]] componentwise."""
    x, z, w = as_point(x), as_point(z), as_point(w)
    if not (x.dim == z.dim == w.dim):
        raise ShapeMismatch("block_upper needs points of equal dim")
    if not (x.rows == x.cols and w.rows == w.cols and z.rows == x.rows and z.cols == w.cols):
        raise ShapeMismatch(f"block_upper shapes {x.shape}, {z.shape}, {w.shape}")
    return PointMatrix([
        block_matrix([[a, b], [Matrix.zeros(c.rows, a.cols), c]])
        for a, b, c in zip(x.components, z.components, w.components)
    ])


def point_hstack(blocks: Sequence[PointMatrix]) -> PointMatrix:
    dim = blocks[0].dim
    return PointMatrix([hstack([b.components[k] for b in blocks]) for k in range(dim)])


def point_vstack(blocks: Sequence[PointMatrix]) -> PointMatrix:
    dim = blocks[0].dim
    return PointMatrix([vstack([b.components[k] for b in blocks]) for k in range(dim)])

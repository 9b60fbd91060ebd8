"""Dense k-linear maps between matrix spaces, and their bimodule actions.

A map ``g`` taking ``Z^1, ..., Z^k`` (``Z^i`` a dim-``d_i`` point of shape
``r_i x c_i``) to an ``R x C`` matrix is stored as one rational matrix
``coeffs`` with a row per elementary tensor and ``R*C`` columns:

    vec(g(Z^1, ..., Z^k)) = (vec Z^1 (x) ... (x) vec Z^k) @ coeffs

``vec`` is row-major within a component and component-major across
components (see :meth:`PointMatrix.vec`).  For ``k = 0`` the map is a
constant matrix and ``coeffs`` has a single row.

The slot-j bimodule over ``R^{s_j x s_j}`` acts by

* j = 0 on the left: ``(S.g)(Z) = S g(Z)``
* j > 0 on the left: ``(S.g)(Z) = g(.., Z^j S, ..)``
* j < k on the right: ``(g.S)(Z) = g(.., S Z^{j+1}, ..)``
* j = k on the right: ``(g.S)(Z) = g(Z) S``
"""

from __future__ import annotations

from itertools import product
from math import prod
from typing import Callable, Sequence

from .errors import ShapeMismatch, SlotOutOfRange
from .exactalg import Matrix, PointMatrix, vstack


def _arg_size(shape) -> int:
    r, c, d = shape
    return r * c * d


class MultiLinearMap:
    __slots__ = ("argshapes", "outshape", "coeffs")

    def __init__(self, argshapes: Sequence, outshape: Sequence, coeffs: Matrix):
        self.argshapes = tuple(tuple(a) for a in argshapes)
        self.outshape = tuple(outshape)
        rows = prod(_arg_size(a) for a in self.argshapes)
        cols = self.outshape[0] * self.outshape[1]
        if coeffs.shape != (rows, cols):
            raise ShapeMismatch(f"coefficient matrix {coeffs.shape}, expected {(rows, cols)}")
        self.coeffs = coeffs

    @property
    def arity(self) -> int:
        return len(self.argshapes)

    @property
    def outlen(self) -> int:
        return self.outshape[0] * self.outshape[1]

    def same_space(self, other: "MultiLinearMap") -> bool:
        return self.argshapes == other.argshapes and self.outshape == other.outshape

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, argshapes, outshape) -> "MultiLinearMap":
        rows = prod(_arg_size(a) for a in argshapes)
        return cls(argshapes, outshape, Matrix.zeros(rows, outshape[0] * outshape[1]))

    @classmethod
    def constant(cls, m: Matrix) -> "MultiLinearMap":
        return cls((), m.shape, m.reshape(1, m.rows * m.cols))

    @classmethod
    def from_callable(cls, argshapes, outshape, fn: Callable) -> "MultiLinearMap":
        """Materialize a k-linear ``fn(list_of_points) -> Matrix`` by probing elementary tensors."""
        bases = [basis_points(a) for a in argshapes]
        rows = []
        for combo in product(*bases):
            out = fn(list(combo))
            if out.shape != tuple(outshape):
                raise ShapeMismatch(f"callable returned {out.shape}, expected {tuple(outshape)}")
            rows.append(out.reshape(1, out.rows * out.cols))
        if not argshapes:
            coeffs = rows[0]
        else:
            coeffs = vstack(rows)
        return cls(argshapes, outshape, coeffs)

    # -- evaluation ---------------------------------------------------

    def __call__(self, *zs) -> Matrix:
        if len(zs) == 1 and isinstance(zs[0], (list, tuple)):
            zs = tuple(zs[0])
        if len(zs) != self.arity:
            raise ShapeMismatch(f"{self.arity}-linear map given {len(zs)} arguments")
        v = Matrix.identity(1)
        for z, (r, c, d) in zip(zs, self.argshapes):
            if z.shape != (r, c) or z.dim != d:
                raise ShapeMismatch(f"argument of shape {z.shape}/dim {z.dim}, expected {(r, c)}/dim {d}")
            v = v.kron(Matrix.from_fractions(1, r * c * d, z.vec()))
        return (v @ self.coeffs).reshape(*self.outshape)

    # -- linear structure ---------------------------------------------

    def __add__(self, other: "MultiLinearMap") -> "MultiLinearMap":
        self._require_same(other)
        return MultiLinearMap(self.argshapes, self.outshape, self.coeffs + other.coeffs)

    def __sub__(self, other: "MultiLinearMap") -> "MultiLinearMap":
        self._require_same(other)
        return MultiLinearMap(self.argshapes, self.outshape, self.coeffs - other.coeffs)

    def __neg__(self) -> "MultiLinearMap":
        return MultiLinearMap(self.argshapes, self.outshape, -self.coeffs)

    def __mul__(self, c) -> "MultiLinearMap":
        return MultiLinearMap(self.argshapes, self.outshape, self.coeffs * c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiLinearMap):
            return NotImplemented
        return self.same_space(other) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.argshapes, self.outshape, self.coeffs))

    def is_zero(self) -> bool:
        return self.coeffs.is_zero()

    def _require_same(self, other: "MultiLinearMap") -> None:
        if not self.same_space(other):
            raise ShapeMismatch("multilinear maps live in different spaces")

    def __repr__(self) -> str:
        return f"MultiLinearMap(args={self.argshapes}, out={self.outshape})"

    # -- composition --------------------------------------------------

    def precompose(self, slot: int, m: Matrix, newshape=None) -> "MultiLinearMap":
        """Map Z -> g(.., L(Z), ..) where vec L(Z) = vec(Z) @ m for argument ``slot`` (0-based)."""
        newshape = tuple(newshape) if newshape is not None else self.argshapes[slot]
        old_n = _arg_size(self.argshapes[slot])
        new_n = _arg_size(newshape)
        if m.shape != (new_n, old_n):
            raise ShapeMismatch(f"precompose matrix {m.shape}, expected {(new_n, old_n)}")
        before = prod(_arg_size(a) for a in self.argshapes[:slot])
        after = prod(_arg_size(a) for a in self.argshapes[slot + 1:])
        width = after * self.outlen
        chunk = old_n * after
        parts = []
        for b in range(before):
            block = self.coeffs.block(b * chunk, (b + 1) * chunk, 0, self.outlen).reshape(old_n, width)
            parts.append((m @ block).reshape(new_n * after, self.outlen))
        shapes = list(self.argshapes)
        shapes[slot] = newshape
        return MultiLinearMap(shapes, self.outshape, vstack(parts))

    def left_multiply(self, s: Matrix) -> "MultiLinearMap":
        """Z -> S g(Z)."""
        r, c = self.outshape
        if s.cols != r:
            raise ShapeMismatch("left factor does not match output rows")
        return MultiLinearMap(self.argshapes, (s.rows, c), self.coeffs @ s.transpose().kron(Matrix.identity(c)))

    def right_multiply(self, s: Matrix) -> "MultiLinearMap":
        """Z -> g(Z) S."""
        r, c = self.outshape
        if s.rows != c:
            raise ShapeMismatch("right factor does not match output columns")
        return MultiLinearMap(self.argshapes, (r, s.cols), self.coeffs @ Matrix.identity(r).kron(s))

    # -- bimodule actions ---------------------------------------------

    def _slot_check(self, j: int) -> None:
        if not 0 <= j <= self.arity:
            raise SlotOutOfRange(f"slot {j} outside 0..{self.arity}")

    def left_action(self, s: Matrix, j: int) -> "MultiLinearMap":
        self._slot_check(j)
        if j == 0:
            return self.left_multiply(s)
        return self.precompose(j - 1, vec_right_factor(self.argshapes[j - 1], s))

    def right_action(self, s: Matrix, j: int) -> "MultiLinearMap":
        self._slot_check(j)
        if j == self.arity:
            return self.right_multiply(s)
        return self.precompose(j, vec_left_factor(self.argshapes[j], s))

    def bracket(self, s: Matrix, j: int) -> "MultiLinearMap":
        """[S, g] = S.g - g.S in the slot-j bimodule."""
        return self.left_action(s, j) - self.right_action(s, j)

    # -- amplification ------------------------------------------------

    def amplified(self, zs: Sequence[PointMatrix], ms: Sequence[int]) -> Matrix:
        """Block form on amplified sizes: block (i_0, i_k) is the sum over the
        inner indices of g(Z^1_{i_0 i_1}, ..., Z^k_{i_{k-1} i_k})."""
        k = self.arity
        if len(ms) != k + 1 or len(zs) != k:
            raise ShapeMismatch("amplification needs k+1 multiplicities and k arguments")
        if k == 0:
            g = self.coeffs.reshape(*self.outshape)
            return Matrix.identity(ms[0]).kron(g)
        br = [a[0] for a in self.argshapes]
        bc = [a[1] for a in self.argshapes]
        for i, z in enumerate(zs):
            if z.shape != (br[i] * ms[i], bc[i] * ms[i + 1]):
                raise ShapeMismatch(f"argument {i + 1} has shape {z.shape}, not a block multiple")

        def blk(i, a, b):
            return zs[i].block(a * br[i], (a + 1) * br[i], b * bc[i], (b + 1) * bc[i])

        r, c = self.outshape
        grid = []
        for i0 in range(ms[0]):
            row = []
            for ik in range(ms[k]):
                acc = Matrix.zeros(r, c)
                for inner in product(*(range(m) for m in ms[1:k])):
                    idx = (i0,) + inner + (ik,)
                    acc = acc + self([blk(i, idx[i], idx[i + 1]) for i in range(k)])
                row.append(acc)
            grid.append(row)
        from .exactalg import block_matrix

        return block_matrix(grid)


def basis_points(shape) -> list:
    """Elementary points of an argument space, in vec order."""
    r, c, d = shape
    return [PointMatrix.unit(d, r, c, comp, i, j) for comp in range(d) for i in range(r) for j in range(c)]


def vec_right_factor(shape, s: Matrix) -> Matrix:
    """M with vec(Z S) = vec(Z) @ M."""
    r, c, d = shape
    return Matrix.identity(d * r).kron(s)


def vec_left_factor(shape, s: Matrix) -> Matrix:
    """M with vec(S Z) = vec(Z) @ M."""
    r, c, d = shape
    return Matrix.identity(d).kron(s.transpose()).kron(Matrix.identity(c))


def sandwich_factor(shape, left: Matrix, right: Matrix) -> Matrix:
    """M with vec(L Z R) = vec(Z) @ M."""
    r, c, d = shape
    return Matrix.identity(d).kron(left.transpose()).kron(right)

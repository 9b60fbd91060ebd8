"""Derivation tables at base points and the inner-derivation solvers.

A table records ``D^{ij} = D(E_ij)`` for the matrix units of ``R^{s x s}``.
Order-0 tables hold matrices acted on by ordinary multiplication; higher
tables hold :class:`MultiLinearMap` values acted on through the slot-j
bimodule structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .diffcalc import NcOracle
from .errors import NotInner, PostconditionFailure, PreconditionFailure, ShapeMismatch, SlotOutOfRange
from .exactalg import Matrix, PointMatrix, commutator, matrix_unit, to_scalar
from .multilinear import MultiLinearMap, sandwich_factor
from .report import Report


@dataclass(frozen=True)
class DerivationTable:
    s: int
    entries: dict  # (i, j) 1-based -> Matrix | MultiLinearMap
    slot: int | None = None  # bimodule slot for multilinear entries; None for matrices

    def __getitem__(self, ij):
        return self.entries[ij]

    @property
    def multilinear(self) -> bool:
        return self.slot is not None

    def unit(self, i: int, j: int) -> Matrix:
        return matrix_unit(self.s, i, j)

    def left(self, s: Matrix, x):
        return x.left_action(s, self.slot) if self.multilinear else s @ x

    def right(self, x, s: Matrix):
        return x.right_action(s, self.slot) if self.multilinear else x @ s

    def bracket(self, s: Matrix, x):
        """[S, X] = S.X - X.S."""
        return self.left(s, x) - self.right(x, s)

    def apply(self, s: Matrix):
        """D(S) by linearity: sum of S_ij D^{ij}."""
        out = None
        for i, j, v in s.nonzero_entries():
            term = self.entries[(i + 1, j + 1)] * v
            out = term if out is None else out + term
        if out is None:
            out = self.entries[(1, 1)] * 0
        return out

    def zero_value(self):
        return self.entries[(1, 1)] * 0

    def diagonal_value(self, i: int, k: int):
        """E_kk . D^{ii} . E_kk, which is the scalar D^{ii}_{kk} placed at (k, k) for matrices."""
        e = self.unit(k, k)
        return self.right(self.left(e, self.entries[(i, i)]), e)

    def __len__(self) -> int:
        return len(self.entries)


def derivation_table_order0(F: NcOracle, Y: PointMatrix) -> DerivationTable:
    """D^{ij} = F(Y, Y)(E_ij Y - Y E_ij)."""
    if F.order != 1:
        raise ShapeMismatch(f"need an order-1 oracle, got order {F.order}")
    if Y.rows != Y.cols:
        raise ShapeMismatch("base point must be square")
    s = Y.rows
    entries = {}
    for i, j in product(range(1, s + 1), repeat=2):
        entries[(i, j)] = F([Y, Y], [commutator(matrix_unit(s, i, j), Y)])
    return DerivationTable(s, entries)


def derivation_map(F: NcOracle, Y: PointMatrix):
    """S -> F(Y, Y)(S Y - Y S), evaluated directly (no table)."""
    return lambda S: F([Y, Y], [commutator(S, Y)])


def check_leibniz(D: DerivationTable) -> Report:
    """Check the basis form of the Lie-derivation identity for every (r, s, u, v)."""
    n = D.s
    checked = 0
    for r, s_, u, v in product(range(1, n + 1), repeat=4):
        e_rs, e_uv = D.unit(r, s_), D.unit(u, v)
        lhs = D.bracket(e_rs, D[(u, v)]) - D.bracket(e_uv, D[(r, s_)])
        rhs = D.zero_value()
        if s_ == u:
            rhs = rhs + D[(r, v)]
        if r == v:
            rhs = rhs - D[(u, s_)]
        checked += 1
        if lhs != rhs:
            return Report("leibniz", False, checked, witness={"r": r, "s": s_, "u": u, "v": v,
                                                              "lhs": lhs, "rhs": rhs})
    return Report("leibniz", True, checked)


def check_diagonal_constancy(D: DerivationTable) -> Report:
    """D^{ii}_{kk} independent of k (matrix tables only)."""
    checked = 0
    for i in range(1, D.s + 1):
        vals = {D[(i, i)][k, k] for k in range(D.s)}
        checked += 1
        if len(vals) > 1:
            return Report("diagonal-constancy", False, checked, witness={"i": i, "values": sorted(vals)})
    return Report("diagonal-constancy", True, checked)


def diagonal_obstruction(D: DerivationTable):
    """First (i, k) with E_kk . D^{ii} . E_kk != 0, or None."""
    for i, k in product(range(1, D.s + 1), repeat=2):
        val = D.diagonal_value(i, k)
        if not val.is_zero():
            return (i, k, val)
    return None


def _verify_inner(D: DerivationTable, N, name: str) -> None:
    for r, s_ in product(range(1, D.s + 1), repeat=2):
        if D.bracket(D.unit(r, s_), N) != D[(r, s_)]:
            raise PostconditionFailure(
                f"{name}: D(E_{r}{s_}) != [E_{r}{s_}, N]; the source is not integrable at this base point",
                witness={"r": r, "s": s_, "expected": D[(r, s_)], "got": D.bracket(D.unit(r, s_), N)})


def inner_solve(D: DerivationTable, c=0):
    """N = sum_i (E_ii D^{ii} + E_i1 D^{1i} E_ii) + c I with D(S) = [S, N].

    For matrix tables ``c`` is a scalar.  For multilinear tables ``c`` may be 0
    or a map, added as sum_i E_i1 . c . E_1i, which commutes with every S.
    """
    bad = diagonal_obstruction(D)
    if bad is not None:
        i, k, val = bad
        raise NotInner(f"diagonal obstruction: D^{{{i}{i}}}_{{{k}{k}}} != 0", witness={"i": i, "k": k, "value": val})
    N = D.zero_value()
    for i in range(1, D.s + 1):
        e_ii, e_i1 = D.unit(i, i), D.unit(i, 1)
        N = N + D.left(e_ii, D[(i, i)]) + D.right(D.left(e_i1, D[(1, i)]), e_ii)
    if D.multilinear:
        if isinstance(c, MultiLinearMap):
            N = N + central_average(c, D.slot, D.s)
        elif c != 0:
            raise ShapeMismatch("a multilinear inner solve takes c = 0 or a multilinear map")
    else:
        N = N + Matrix.scalar(D.s, to_scalar(c))
    _verify_inner(D, N, "inner_solve")
    return N


def central_average(c: MultiLinearMap, slot: int, s: int) -> MultiLinearMap:
    """sum_i E_i1 . c . E_1i in the slot bimodule; commutes with every R in R^{s x s}."""
    out = MultiLinearMap.zero(c.argshapes, c.outshape)
    for i in range(1, s + 1):
        out = out + c.left_action(matrix_unit(s, i, 1), slot).right_action(matrix_unit(s, 1, i), slot)
    return out


def _f_arg_shapes(F: NcOracle, ys, j: int) -> list:
    """Argument shapes (rows, cols, dim) of the k-linear values at base points."""
    sizes = [y.rows for y in ys]
    zdims = F.zdims[:j] + F.zdims[j + 1:]
    return [(sizes[i], sizes[i + 1], zdims[i]) for i in range(len(ys) - 1)]


def jD_table(F: NcOracle, ys, j: int) -> DerivationTable:
    """Entry (i, l): Z -> F_j(Y^0..Y^j, Y^j..Y^k)(Z^1..Z^j, E_il Y^j - Y^j E_il, Z^{j+1}..Z^k)."""
    ys = list(ys)
    k = len(ys) - 1
    if not 0 <= j <= k:
        raise SlotOutOfRange(f"slot {j} outside 0..{k}")
    if F.order != k + 1:
        raise ShapeMismatch(f"F_{j} must have order {k + 1}, got {F.order}")
    yj = ys[j]
    if yj.rows != yj.cols:
        raise ShapeMismatch("base points must be square")
    s = yj.rows
    pts = ys[:j] + [yj, yj] + ys[j + 1:]
    argshapes = _f_arg_shapes(F, ys, j)
    outshape = (ys[0].rows, ys[-1].rows)
    entries = {}
    for i, l in product(range(1, s + 1), repeat=2):
        comm = commutator(matrix_unit(s, i, l), yj)

        def fn(zs, comm=comm):
            return F(pts, zs[:j] + [comm] + zs[j:])

        entries[(i, l)] = MultiLinearMap.from_callable(argshapes, outshape, fn)
    return DerivationTable(s, entries, slot=j)


def gj_assemble(table: DerivationTable, j: int | None = None) -> MultiLinearMap | Matrix:
    """g_j = - sum_i jD(E_i1) . E_1i, verified to satisfy [S, g_j] = jD(S) on the basis."""
    if j is not None and table.multilinear and j != table.slot:
        raise SlotOutOfRange(f"table is for slot {table.slot}, not {j}")
    g = table.zero_value()
    for i in range(1, table.s + 1):
        g = g - table.right(table[(i, 1)], table.unit(1, i))
    for r, s_ in product(range(1, table.s + 1), repeat=2):
        if table.bracket(table.unit(r, s_), g) != table[(r, s_)]:
            raise PostconditionFailure(
                f"g_{table.slot}: [E_{r}{s_}, g] != D(E_{r}{s_}); compatibility fails at the base point",
                witness={"slot": table.slot, "r": r, "s": s_})
    return g


def g_combine(gs, sizes) -> MultiLinearMap:
    """g = g_0 + sum_l sum_{i_0..i_{l-1}} E_{i_0 1} g_l(E_{1 i_0} Z^1 E_{i_1 1}, ...,
    E_{1 i_{l-1}} Z^l, Z^{l+1}, ..., Z^k)."""
    gs = list(gs)
    k = len(gs) - 1
    if len(sizes) != k + 1:
        raise ShapeMismatch("need one base size per slot")
    g = gs[0]
    for l in range(1, k + 1):
        gl = gs[l]
        if not gl.same_space(g):
            raise ShapeMismatch(f"g_{l} lives in a different space than g_0")
        for idx in product(*(range(1, sizes[t] + 1) for t in range(l))):
            term = gl
            for t in range(l):
                left = matrix_unit(sizes[t], 1, idx[t])
                right = matrix_unit(sizes[t + 1], idx[t + 1], 1) if t + 1 < l else Matrix.identity(sizes[t + 1])
                term = term.precompose(t, sandwich_factor(gl.argshapes[t], left, right))
            g = g + term.left_multiply(matrix_unit(sizes[0], idx[0], 1))
    return g


def verify_g(g: MultiLinearMap, tables) -> Report:
    """Check [R, g] = jD(R) in every slot-j bimodule for every basis R = E_rs."""
    checked = 0
    for table in tables:
        for r, s_ in product(range(1, table.s + 1), repeat=2):
            checked += 1
            if g.bracket(table.unit(r, s_), table.slot) != table[(r, s_)]:
                return Report("g-identities", False, checked, witness={"slot": table.slot, "r": r, "s": s_})
    return Report("g-identities", True, checked)


def check_makingzero(F: NcOracle, Y: PointMatrix, A: Matrix, B: Matrix, C: Matrix, lam=0) -> Report:
    """A F(Y, Y)(B Y - Y B) C == 0 whenever AB = lam A and BC = lam C."""
    lam = to_scalar(lam)
    if A @ B != A * lam or B @ C != C * lam:
        raise PreconditionFailure("need A B = lambda A and B C = lambda C")
    val = A @ F([Y, Y], [commutator(B, Y)]) @ C
    if val.is_zero():
        return Report("makingzero", True, 1)
    return Report("makingzero", False, 1, witness={"value": val})

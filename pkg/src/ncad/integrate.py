"""Antiderivatives of nc functions from their difference-differentials.

Given order-(k+1) oracles F_0..F_k and base points Y^0..Y^k, the
reconstruction is

    f(X^0..X^k)(Z^1..Z^k) = G(Z^1..Z^k)
        + sum_j F_j(I(x)Y^0, .., I(x)Y^j, X^j, .., X^k)(Z^1..Z^j, X^j - I(x)Y^j, Z^{j+1}..Z^k)

where G is the block amplification of a k-linear map g solving the slot
identities [R, g]_j = jD(R) at the base points.  For k = 0, g is the matrix
f_0 and G = I (x) f_0.  The evaluator is defined on sizes that are multiples
of the base sizes.
"""

from __future__ import annotations

from collections import defaultdict
from math import lcm

from .derivations import (
    derivation_table_order0,
    g_combine,
    gj_assemble,
    inner_solve,
    jD_table,
    verify_g,
)
from .diffcalc import NcOracle, delta_oracle, delta_signature, delta_sym
from .errors import (
    DimMismatch,
    NotIntegrable,
    NotIntegrablePoly,
    OrderMismatch,
    PostconditionFailure,
    ShapeMismatch,
    SizeNotMultiple,
    SlotOutOfRange,
)
from .exactalg import Matrix, PointMatrix, as_point, kron_identity
from .multilinear import MultiLinearMap
from .ncpoly import NcPolynomial
from .report import Report
from .testkit import RngSpec

DEFAULT_SEED = 20240607


class Antiderivative:
    """Order-k nc function reconstructed from F_0..F_k at base points Y^0..Y^k."""

    def __init__(self, sources, basepoints, g: MultiLinearMap, tables=()):
        self.sources = tuple(sources)
        self.basepoints = tuple(basepoints)
        self.order = len(self.basepoints) - 1
        self.g = g
        self.tables = tuple(tables)
        first = self.sources[0]
        self.xdims = first.xdims[1:]
        self.zdims = first.zdims[1:]
        self.sizes = tuple(y.rows for y in self.basepoints)

    @property
    def basevalue(self) -> Matrix | MultiLinearMap:
        """f_0 = f(Y) for k = 0, the k-linear map g otherwise."""
        if self.order == 0:
            return self.g.coeffs.reshape(*self.g.outshape)
        return self.g

    def multiplicities(self, xs) -> list:
        ms = []
        for j, (x, s) in enumerate(zip(xs, self.sizes)):
            if x.rows % s:
                raise SizeNotMultiple(f"point {j} has size {x.rows}, not a multiple of the base size {s}")
            ms.append(x.rows // s)
        return ms

    def _evaluate(self, xs, zs) -> Matrix:
        ms = self.multiplicities(xs)
        amp = [kron_identity(m, y) for m, y in zip(ms, self.basepoints)]
        out = self.g.amplified(zs, ms)
        for j, F in enumerate(self.sources):
            pts = amp[:j + 1] + list(xs[j:])
            dirs = list(zs[:j]) + [xs[j] - amp[j]] + list(zs[j:])
            out = out + F(pts, dirs)
        return out

    def __call__(self, xs, zs=()) -> Matrix:
        return self.oracle(xs, zs)

    @property
    def oracle(self) -> NcOracle:
        return NcOracle(self.xdims, self.zdims, self._evaluate, name="antiderivative")

    def recipe(self) -> dict:
        """Machine-readable description of how the evaluator is assembled."""
        return {
            "order": self.order,
            "base_sizes": list(self.sizes),
            "domain": "sizes n_j = m_j * s_j",
            "formula": "G(Z) + sum_j F_j(I(x)Y^0..I(x)Y^j, X^j..X^k)(Z^1..Z^j, X^j - I(x)Y^j, Z^{j+1}..Z^k)",
            "G": "block amplification of g: block (a, b) = sum over inner indices of "
                 "g(Z^1[a, i_1], Z^2[i_1, i_2], .., Z^k[i_{k-1}, b])" if self.order else "I_m (x) f_0",
        }


# -- integrability ---------------------------------------------------------


def _slot_map(k: int, i: int, j: int) -> list:
    """For iDelta F_j, the base slot of f feeding each of its k+3 x-arguments."""
    of_fj = list(range(j + 1)) + list(range(j, k + 1))
    return of_fj[:i + 1] + [of_fj[i]] + of_fj[i + 1:]


def _pairs(k: int):
    return [(i, j) for j in range(k + 1) for i in range(j + 1)]


def _sample_tuples(xdims, zdims, rng: RngSpec, count: int, max_size: int, base=None, amps=(1,)):
    """Random argument tuples; with ``base`` (points per slot) also amplified base points."""
    out = []
    if base is not None:
        for m in amps:
            xs = [kron_identity(m, y) for y in base]
            sizes = [x.rows for x in xs]
            out.append((xs, [rng.point(d, sizes[t], sizes[t + 1]) for t, d in enumerate(zdims)]))
    for _ in range(count):
        sizes = [rng.integer(1, max_size) for _ in xdims]
        out.append(rng.points(xdims, zdims, sizes))
    return out


def _normalize_sample(sample):
    if len(sample) == 2:
        return list(sample[0]), list(sample[1])
    if len(sample) == 5:
        x, w, y, z1, z2 = sample
        return [x, w, y], [z1, z2]
    raise ShapeMismatch("a sample is (xs, zs) or (X, W, Y, Z1, Z2)")


def _check_orders(Fs) -> int:
    Fs = list(Fs)
    if not Fs:
        raise OrderMismatch("need at least one source function")
    k = len(Fs) - 1
    for j, F in enumerate(Fs):
        if F.order != k + 1:
            raise OrderMismatch(f"F_{j} has order {F.order}; all sources must have order {k + 1}")
    return k


def check_integrability(Fs, samples=None, *, rng: RngSpec | None = None, count: int = 3,
                        max_size: int = 3, basepoints=None) -> Report:
    """iDelta F_j == (j+1)Delta F_i for all 0 <= i <= j <= k.

    Numeric on samples (explicit, or generated from ``rng``); when every source
    carries its polynomial the symbolic identity is checked too, which is global.
    """
    Fs = list(Fs)
    k = _check_orders(Fs)
    rng = rng or RngSpec(DEFAULT_SEED)
    checked = 0
    symbolic = all(F.poly is not None for F in Fs)
    for i, j in _pairs(k):
        sig_l = delta_signature(Fs[j].xdims, Fs[j].zdims, i)
        sig_r = delta_signature(Fs[i].xdims, Fs[i].zdims, j + 1)
        if sig_l != sig_r:
            raise DimMismatch(f"{i}Delta F_{j} and {j + 1}Delta F_{i} have different signatures {sig_l} vs {sig_r}")
        lhs, rhs = delta_oracle(Fs[j], i), delta_oracle(Fs[i], j + 1)
        if samples is not None:
            pair_samples = [_normalize_sample(s) for s in samples]
        else:
            base = None
            if basepoints is not None:
                base = [basepoints[t] for t in _slot_map(k, i, j)]
            pair_samples = _sample_tuples(sig_l[0], sig_l[1], rng, count, max_size, base,
                                          amps=(1, 2, 3) if k == 0 else (1, 2))
        for xs, zs in pair_samples:
            a, b = lhs(xs, zs), rhs(xs, zs)
            checked += 1
            if a != b:
                return Report("integrability", False, checked, sampled=True, witness={
                    "i": i, "j": j, "mode": "numeric", "x": xs, "z": zs, "lhs": a, "rhs": b})
        if symbolic:
            lhs_p, rhs_p = delta_sym(Fs[j].poly, i), delta_sym(Fs[i].poly, j + 1)
            checked += 1
            if lhs_p != rhs_p:
                return Report("integrability", False, checked, witness={
                    "i": i, "j": j, "mode": "symbolic", "lhs": lhs_p, "rhs": rhs_p, "difference": lhs_p - rhs_p})
    rep = Report("integrability", True, checked, sampled=not symbolic)
    if symbolic:
        rep.notes.append("symbolic identity verified for every (i, j); numeric samples agree")
    else:
        rep.notes.append("numeric agreement on samples only; not a global certificate")
    return rep


def check_integrability_order1(F: NcOracle, samples=None, *, rng: RngSpec | None = None, count: int = 3) -> Report:
    """0Delta F == 1Delta F on samples (X, W, Y, Z1, Z2) or on generated ones."""
    return check_integrability([F], samples, rng=rng, count=count)


def check_integrability_higher(Fs, samples=None, *, rng: RngSpec | None = None, count: int = 3) -> Report:
    return check_integrability(Fs, samples, rng=rng, count=count)


# -- construction ----------------------------------------------------------


def _as_points(Ys):
    return [as_point(y) for y in Ys]


def _precheck(Fs, Ys, rng, check: bool):
    if check:
        rep = check_integrability(Fs, rng=rng or RngSpec(DEFAULT_SEED), basepoints=Ys)
        if not rep.passed:
            raise NotIntegrable("compatibility conditions fail", witness=rep.witness)


def integrate_order1(F: NcOracle, Y, c=0, *, check: bool = True, rng: RngSpec | None = None) -> Antiderivative:
    """f with Delta f = F and f(Y) = f_0 = inner_solve(D_Y, c)."""
    if F.order != 1:
        raise OrderMismatch(f"need an order-1 source, got order {F.order}")
    (Y,) = _as_points([Y])
    if Y.dim != F.xdims[0]:
        raise DimMismatch(f"base point has dim {Y.dim}, expected {F.xdims[0]}")
    _precheck([F], [Y], rng, check)
    table = derivation_table_order0(F, Y)
    f0 = inner_solve(table, c)
    return Antiderivative([F], [Y], MultiLinearMap.constant(f0), [table])


def integrate_higher(Fs, Ys, *, check: bool = True, rng: RngSpec | None = None) -> Antiderivative:
    """Order-k antiderivative with jDelta f = F_j, g assembled from the jD tables."""
    Fs = list(Fs)
    k = _check_orders(Fs)
    Ys = _as_points(Ys)
    if len(Ys) != k + 1:
        raise ShapeMismatch(f"need {k + 1} base points, got {len(Ys)}")
    xdims = Fs[0].xdims[1:]
    for j, (y, d) in enumerate(zip(Ys, xdims)):
        if y.rows != y.cols:
            raise ShapeMismatch(f"base point {j} is not square")
        if y.dim != d:
            raise DimMismatch(f"base point {j} has dim {y.dim}, expected {d}")
    _precheck(Fs, Ys, rng, check)
    tables = [jD_table(F, Ys, j) for j, F in enumerate(Fs)]
    gs = [gj_assemble(t, j) for j, t in enumerate(tables)]
    g = g_combine(gs, [y.rows for y in Ys])
    rep = verify_g(g, tables)
    if not rep.passed:
        raise PostconditionFailure("g fails a slot identity; cross-compatibility fails at the base points",
                                   witness=rep.witness)
    return Antiderivative(Fs, Ys, g, tables)


# -- polynomial integration ------------------------------------------------


def integrate_poly(p: NcPolynomial, j: int) -> NcPolynomial:
    """q with jDelta q = p, kernel part chosen zero; raises NotIntegrablePoly otherwise."""
    if p.order < 1:
        raise OrderMismatch("only polynomials of order >= 1 are difference-differentials")
    k = p.order - 1
    if not 0 <= j <= k:
        raise SlotOutOfRange(f"slot {j} outside 0..{k}")
    xd, zd = p.xdims, p.zdims
    if not xd[j] == xd[j + 1] == zd[j]:
        raise DimMismatch(f"slot {j} needs x-dims {xd[j]}, {xd[j + 1]} and z-dim {zd[j]} to agree")
    classes: dict = defaultdict(dict)
    for (words, vs), c in p.terms.items():
        merged = words[j] + (vs[j],) + words[j + 1]
        key = (words[:j] + (merged,) + words[j + 2:], vs[:j] + vs[j + 1:])
        classes[key][len(words[j])] = c
    terms = []
    for key, split in classes.items():
        coeffs = set(split.values())
        length = len(key[0][j])
        if len(split) != length or len(coeffs) != 1:
            missing = sorted(set(range(length)) - set(split))
            raise NotIntegrablePoly(
                "merge class is incomplete or has unequal coefficients",
                witness={"words": [list(w) for w in key[0]], "zletters": list(key[1]),
                         "positions": {str(i): split[i] for i in sorted(split)}, "missing": missing})
        terms.append((key, coeffs.pop()))
    return NcPolynomial(xd[:j + 1] + xd[j + 2:], zd[:j] + zd[j + 1:], terms)


def kernel_part(q: NcPolynomial, j: int) -> NcPolynomial:
    """Monomials of q with an empty j-th word (annihilated by jDelta)."""
    return NcPolynomial(q.xdims, q.zdims, {key: c for key, c in q.terms.items() if not key[0][j]})


# -- verification ----------------------------------------------------------


def _f_samples(f: Antiderivative, j: int, rng: RngSpec, count: int, max_mult: int):
    """Argument tuples for jDelta f at sizes that are multiples of the base sizes."""
    k = f.order
    slots = list(range(j + 1)) + list(range(j, k + 1))
    xdims, zdims = delta_signature(f.xdims, f.zdims, j)
    out = []
    for _ in range(count):
        sizes = [f.sizes[t] * rng.integer(1, max_mult) for t in slots]
        out.append(rng.points(xdims, zdims, sizes))
    return out


def verify_antiderivative(f: Antiderivative, Fs=None, samples=None, *, rng: RngSpec | None = None,
                          count: int = 3, max_mult: int = 2) -> Report:
    """jDelta f == F_j exactly on samples, for every slot j."""
    Fs = list(Fs) if Fs is not None else list(f.sources)
    rng = rng or RngSpec(DEFAULT_SEED)
    oracle = f.oracle
    checked = 0
    for j, F in enumerate(Fs):
        d = delta_oracle(oracle, j)
        pts = [_normalize_sample(s) for s in samples] if samples is not None else _f_samples(f, j, rng, count, max_mult)
        for xs, zs in pts:
            a, b = d(xs, zs), F(xs, zs)
            checked += 1
            if a != b:
                return Report("antiderivative", False, checked, sampled=True,
                              witness={"slot": j, "x": xs, "z": zs, "delta_f": a, "F": b})
    return Report("antiderivative", True, checked, sampled=True)


def constant_difference(f, h, *, rng: RngSpec | None = None, tuples: int = 3, max_mult: int = 2,
                        sizes=None) -> Report:
    """Check f - h is a constant of block form and return it as ``value``.

    The difference is sampled at ``tuples`` random point tuples.  A constant
    k-linear block map C has scalar blocks: C(Z)[a, b] is the sum over inner
    indices of c(Z^1[a, i_1], .., Z^k[i_{k-1}, b]) for one k-linear c on
    R^{d'_1} x .. x R^{d'_k}; for k = 0 this is c I.  ``value`` is c
    (a 1x1-output map; for k = 0 a map of arity 0).
    """
    rng = rng or RngSpec(DEFAULT_SEED)
    k = len(f.zdims)
    step = sizes or _common_sizes(f, h)
    diff = NcOracle(f.xdims, f.zdims, lambda xs, zs: f(xs, zs) - h(xs, zs), name="difference")
    ref_sizes = list(step)
    ref_x = [rng.point(d, n) for d, n in zip(f.xdims, ref_sizes)]
    argshapes = [(1, 1, d) for d in f.zdims]

    def probe(zs):
        full = [_embed_corner(z, ref_sizes[t], ref_sizes[t + 1]) for t, z in enumerate(zs)]
        return diff(ref_x, full).block(0, 1, 0, 1)

    c = MultiLinearMap.from_callable(argshapes, (1, 1), probe)
    checked = 0
    for _ in range(tuples):
        mult = [rng.integer(1, max_mult) for _ in range(k + 1)]
        ns = [s * m for s, m in zip(step, mult)]
        xs, zs = rng.points(f.xdims, f.zdims, ns)
        got = diff(xs, zs)
        want = c.amplified(zs, ns)
        checked += 1
        if got != want:
            return Report("constant-difference", False, checked, sampled=True,
                          witness={"x": xs, "z": zs, "difference": got, "block_form": want})
    return Report("constant-difference", True, checked, sampled=True, value=c)


def _embed_corner(z: PointMatrix, rows: int, cols: int) -> PointMatrix:
    """A rows x cols point whose only nonzero entry is z's 1x1 value at (0, 0)."""
    comps = []
    for m in z.components:
        vals = [0] * (rows * cols)
        vals[0] = m[0, 0]
        comps.append(Matrix.from_fractions(rows, cols, vals))
    return PointMatrix(comps)


def _common_sizes(f, h) -> list:
    a = getattr(f, "sizes", None)
    b = getattr(h, "sizes", None)
    k = len(f.zdims)
    a = a or (1,) * (k + 1)
    b = b or (1,) * (k + 1)
    return [lcm(x, y) for x, y in zip(a, b)]

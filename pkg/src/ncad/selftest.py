"""Seeded property suite behind ``ncad selftest``."""

from __future__ import annotations

import time

from .derivations import check_leibniz, check_makingzero, derivation_table_order0, inner_solve
from .diffcalc import NcOracle, check_delta_commutation, delta_oracle, delta_sym
from .exactalg import Matrix, PointMatrix
from .integrate import (
    check_integrability_order1,
    constant_difference,
    integrate_higher,
    integrate_order1,
    integrate_poly,
    verify_antiderivative,
)
from .errors import NotIntegrablePoly
from .ncpoly import NcPolynomial, evaluate
from .report import Report
from .testkit import (
    RngSpec,
    check_respects_structure,
    entrywise_square_oracle,
    perturb_coefficient,
    random_idempotent,
    random_poly,
)


def _poly(rng: RngSpec, max_order: int = 2, degree: int = 3, terms: int = 3) -> NcPolynomial:
    k = rng.integer(0, max_order)
    return random_poly(k, [rng.integer(1, 2) for _ in range(k + 1)], [rng.integer(1, 2) for _ in range(k)],
                       degree, terms, rng)


def _delta_agreement(rng, n):
    for t in range(n):
        p = _poly(rng)
        for j in range(p.order + 1):
            q = delta_sym(p, j)
            xs, zs = rng.points(q.xdims, q.zdims, [rng.integer(1, 2) for _ in q.xdims])
            if evaluate(q, xs, zs) != delta_oracle(NcOracle.from_poly(p), j)(xs, zs):
                return Report("delta-agreement", False, t + 1, witness={"poly": p, "slot": j})
    return Report("delta-agreement", True, n, sampled=True)


def _commutation(rng, n):
    for t in range(n):
        p = _poly(rng)
        for j in range(p.order + 1):
            for i in range(j + 1):
                if not check_delta_commutation(p, i, j):
                    return Report("delta-commutation", False, t + 1, witness={"poly": p, "i": i, "j": j})
    return Report("delta-commutation", True, n)


def _round_trip0(rng, n):
    for t in range(n):
        q = random_poly(0, [rng.integer(1, 2)], [], 3, 3, rng)
        F = NcOracle.from_poly(delta_sym(q, 0))
        Y = rng.point(q.xdims[0], rng.integer(1, 2))
        f = integrate_order1(F, Y, rng=rng)
        for rep in (verify_antiderivative(f, rng=rng), constant_difference(f, NcOracle.from_poly(q), rng=rng)):
            if not rep:
                return Report("order0-round-trip", False, t + 1, witness=rep.witness)
    return Report("order0-round-trip", True, n, sampled=True)


def _inner_fixture(rng, n):
    x2 = NcPolynomial.monomial([1], [], [(1, 1)])
    Y = PointMatrix.from_rows([[1, 0], [0, 2]])
    N = inner_solve(derivation_table_order0(NcOracle.from_poly(delta_sym(x2, 0)), Y))
    if N != Matrix.from_rows([[0, 0], [0, 3]]):
        return Report("inner-solve", False, 1, witness={"N": N})
    for t in range(n):
        q = random_poly(0, [1], [], 3, 3, rng)
        table = derivation_table_order0(NcOracle.from_poly(delta_sym(q, 0)), rng.point(1, 2))
        if not check_leibniz(table):
            return Report("inner-solve", False, t + 2, witness={"poly": q})
        inner_solve(table)
    return Report("inner-solve", True, n + 1)


def _round_trip_higher(rng, n):
    for t in range(n):
        k = rng.integer(1, 2)
        q = random_poly(k, [1] * (k + 1), [1] * k, 3, 3, rng)
        Fs = [NcOracle.from_poly(delta_sym(q, j)) for j in range(k + 1)]
        f = integrate_higher(Fs, [rng.point(1, rng.integer(1, 2)) for _ in range(k + 1)], rng=rng)
        for rep in (verify_antiderivative(f, rng=rng), constant_difference(f, NcOracle.from_poly(q), rng=rng)):
            if not rep:
                return Report("higher-round-trip", False, t + 1, witness=rep.witness)
    return Report("higher-round-trip", True, n, sampled=True)


def _negatives(rng, n):
    xz = NcPolynomial.monomial([1, 1], [1], [(1,), ()], (1,))
    if check_integrability_order1(NcOracle.from_poly(xz), rng=rng):
        return Report("negatives", False, 1, witness={"poly": xz})
    try:
        integrate_poly(xz, 0)
        return Report("negatives", False, 1, witness={"poly": xz})
    except NotIntegrablePoly:
        pass
    for t in range(n):
        q = random_poly(0, [1], [], 3, 3, rng)
        bad = perturb_coefficient(delta_sym(q, 0), 0, rng)
        if bad is None:
            continue
        try:
            integrate_poly(bad, 0)
            return Report("negatives", False, t + 2, witness={"poly": bad})
        except NotIntegrablePoly:
            pass
    return Report("negatives", True, n + 2)


def _makingzero(rng, n):
    for t in range(n):
        size = rng.integer(1, 3)
        P = random_idempotent(size, rng)
        q = random_poly(0, [1], [], 3, 3, rng)
        rep = check_makingzero(NcOracle.from_poly(delta_sym(q, 0)), rng.point(1, size), P, P, P, 1)
        if not rep:
            return Report("makingzero", False, t + 1, witness=rep.witness)
    return Report("makingzero", True, n)


def _structure(rng, n):
    for t in range(n):
        p = _poly(rng)
        rep = check_respects_structure(NcOracle.from_poly(p), rng, samples=1)
        if not rep:
            return Report("respects-structure", False, t + 1, witness=rep.witness)
    if check_respects_structure(entrywise_square_oracle(), rng):
        return Report("respects-structure", False, n + 1, witness={"oracle": "entrywise-square"})
    return Report("respects-structure", True, n + 1, sampled=True)


CHECKS = [
    ("delta-agreement", _delta_agreement, 20),
    ("delta-commutation", _commutation, 20),
    ("inner-solve", _inner_fixture, 10),
    ("order0-round-trip", _round_trip0, 10),
    ("higher-round-trip", _round_trip_higher, 4),
    ("negatives", _negatives, 10),
    ("makingzero", _makingzero, 10),
    ("respects-structure", _structure, 10),
]


def run(seed: int = 0) -> list:
    """Run every check with its own seeded stream; returns (report, seconds) pairs."""
    out = []
    for idx, (_, fn, n) in enumerate(CHECKS):
        rng = RngSpec(seed * 1000 + idx)
        t0 = time.perf_counter()
        rep = fn(rng, n)
        out.append((rep, time.perf_counter() - t0))
    return out

"""Acceptance criteria, one test each, exact rational equality throughout.

Each test prints a single ``criterion N: PASS|FAIL`` line with its runtime.
Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also printed with capture disabled, so plain ``pytest`` shows them too.
"""

import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import oracles
from ncad.derivations import check_makingzero, derivation_table_order0, inner_solve
from ncad.diffcalc import NcOracle, check_delta_commutation, delta_num, delta_sym
from ncad.errors import NotIntegrablePoly
from ncad.exactalg import Matrix, PointMatrix
from ncad.integrate import (
    check_integrability_order1,
    constant_difference,
    integrate_higher,
    integrate_order1,
    integrate_poly,
    verify_antiderivative,
)
from ncad.ncpoly import NcPolynomial, evaluate
from ncad.testkit import (
    RngSpec,
    check_respects_structure,
    entrywise_square_oracle,
    perturb_coefficient,
    random_eigen_triple,
    random_idempotent,
    random_poly,
)


@contextmanager
def criterion(request, number, title, limit):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        secs = time.perf_counter() - t0
        ok = ok and secs < limit
        with request.config.pluginmanager.getplugin("capturemanager").global_and_fixture_disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s, limit {limit}s)")
    assert secs < limit, f"criterion {number} took {secs:.2f}s"


def _random_signature(rng, k, max_dim=2):
    return [rng.integer(1, max_dim) for _ in range(k + 1)], [rng.integer(1, max_dim) for _ in range(k)]


def _any_poly(rng, max_order, degree, terms=4):
    k = rng.integer(0, max_order)
    xdims, zdims = _random_signature(rng, k)
    return random_poly(k, xdims, zdims, degree, terms, rng)


def test_criterion_1_delta_agreement(request):
    rng = RngSpec(101)
    with criterion(request, 1, "symbolic/numeric difference-differential agreement", 30):
        for _ in range(200):
            p = _any_poly(rng, 2, 4)
            f = NcOracle.from_poly(p)
            for j in range(p.order + 1):
                sizes = [rng.integer(1, 3) for _ in range(p.order + 2)]
                q = delta_sym(p, j)
                xs, zs = rng.points(q.xdims, q.zdims, sizes)
                direction = zs[j]
                other = zs[:j] + zs[j + 1:]
                assert evaluate(q, xs, zs) == delta_num(f, j, xs, other, direction), (p, j)


def test_criterion_2_commutation(request):
    rng = RngSpec(202)
    with criterion(request, 2, "difference-differential commutation", 30):
        pairs = 0
        for _ in range(100):
            p = _any_poly(rng, 2, 4)
            for j in range(p.order + 1):
                for i in range(j + 1):
                    assert check_delta_commutation(p, i, j).passed, (p, i, j)
                    pairs += 1
        assert pairs >= 100


def test_criterion_3_order0_round_trip(request):
    rng = RngSpec(303)
    with criterion(request, 3, "order-0 round trip", 60):
        for t in range(50):
            d = rng.integer(1, 2)
            q = random_poly(0, [d], [], 4, 4, rng)
            F = NcOracle.from_poly(delta_sym(q, 0))
            for size in (1, 2):
                Y = rng.point(d, size)
                f = integrate_order1(F, Y, 0, rng=rng)
                assert verify_antiderivative(f, rng=rng).passed, (q, Y)
                rep = constant_difference(f, NcOracle.from_poly(q), rng=rng)
                assert rep.passed, rep.witness
                c = rep.value()[0, 0]
                # the same c at the base point itself and at an unrelated size
                assert f([Y], []) - evaluate(q, [Y], []) == Matrix.scalar(size, c)
                X = rng.point(d, 3 * size)
                assert f([X], []) - evaluate(q, [X], []) == Matrix.scalar(3 * size, c)


def _independent_derivation_value(F, Y, r, s):
    """F(Y, Y)(E_rs Y - Y E_rs) on nested lists, sharing no code with the package."""
    n = Y.rows
    e = oracles.zeros(n, n)
    e[r - 1][s - 1] = 1
    ys = oracles.components(Y)
    direction = [oracles.add(oracles.mul(e, y), oracles.smul(-1, oracles.mul(y, e))) for y in ys]
    return oracles.naive_eval(oracles.terms_of(F), [ys, ys], [direction]), e


def test_criterion_4_inner_solve(request):
    rng = RngSpec(404)
    with criterion(request, 4, "inner-derivation solver", 10):
        x2 = NcPolynomial.monomial([1], [], [(1, 1)])
        fixture = inner_solve(derivation_table_order0(NcOracle.from_poly(delta_sym(x2, 0)),
                                                      PointMatrix.from_rows([[1, 0], [0, 2]])), 0)
        assert fixture == Matrix.from_rows([[0, 0], [0, 3]])
        for _ in range(50):
            d = rng.integer(1, 2)
            q = random_poly(0, [d], [], 4, 4, rng)
            Fp = delta_sym(q, 0)
            Y = rng.point(d, rng.integer(1, 3))
            N = inner_solve(derivation_table_order0(NcOracle.from_poly(Fp), Y))
            nn = N.tolist()
            for r in range(1, Y.rows + 1):
                for s in range(1, Y.rows + 1):
                    want, e = _independent_derivation_value(Fp, Y, r, s)
                    bracket = oracles.add(oracles.mul(e, nn), oracles.smul(-1, oracles.mul(nn, e)))
                    assert bracket == want, (q, Y, r, s)


@pytest.mark.parametrize("k", [1, 2])
def test_criterion_5_higher_round_trip(request, k):
    rng = RngSpec(500 + k)
    with criterion(request, 5, f"higher-order round trip, k={k}", 120):
        for _ in range(20):
            xdims, zdims = _random_signature(rng, k)
            q = random_poly(k, xdims, zdims, 3, 4, rng)
            Fs = [NcOracle.from_poly(delta_sym(q, j)) for j in range(k + 1)]
            Ys = [rng.point(d, rng.integer(1, 2)) for d in xdims]
            f = integrate_higher(Fs, Ys, rng=rng)
            assert verify_antiderivative(f, rng=rng).passed, (q, Ys)
            rep = constant_difference(f, NcOracle.from_poly(q), rng=rng, tuples=3)
            assert rep.passed and rep.checked >= 3, rep.witness


def test_criterion_6_negative_detection(request):
    rng = RngSpec(606)
    with criterion(request, 6, "negative detection", 10):
        xz = NcPolynomial.monomial([1, 1], [1], [(1,), ()], (1,))
        rep = check_integrability_order1(NcOracle.from_poly(xz), rng=rng)
        assert not rep.passed and rep.witness is not None
        with pytest.raises(NotIntegrablePoly) as info:
            integrate_poly(xz, 0)
        assert info.value.witness["missing"] == [0]
        corrupted = 0
        while corrupted < 20:
            q = _any_poly(rng, 1, 4)
            j = rng.integer(0, q.order)
            bad = perturb_coefficient(delta_sym(q, j), j, rng)
            if bad is None:
                continue
            corrupted += 1
            caught = False
            try:
                integrate_poly(bad, j)
            except NotIntegrablePoly:
                caught = True
            if bad.order == 1:
                caught = caught or not check_integrability_order1(NcOracle.from_poly(bad), rng=rng).passed
            assert caught, bad


def test_criterion_7_makingzero(request):
    rng = RngSpec(707)
    with criterion(request, 7, "vanishing sandwich for idempotents and eigen triples", 10):
        for _ in range(50):
            n = rng.integer(1, 3)
            P = random_idempotent(n, rng)
            assert P @ P == P
            d = rng.integer(1, 2)
            F = NcOracle.from_poly(delta_sym(random_poly(0, [d], [], 4, 4, rng), 0))
            assert check_makingzero(F, rng.point(d, n), P, P, P, 1).passed
        for _ in range(20):
            n = rng.integer(1, 3)
            A, B, C, lam = random_eigen_triple(n, rng)
            assert A @ B == A * lam and B @ C == C * lam
            d = rng.integer(1, 2)
            F = NcOracle.from_poly(delta_sym(random_poly(0, [d], [], 4, 4, rng), 0))
            assert check_makingzero(F, rng.point(d, n), A, B, C, lam).passed


def test_criterion_8_structure(request):
    rng = RngSpec(808)
    with criterion(request, 8, "structure axioms", 30):
        for _ in range(50):
            p = _any_poly(rng, 2, 3)
            rep = check_respects_structure(NcOracle.from_poly(p), rng)
            assert rep.passed, rep.witness
        bad = check_respects_structure(entrywise_square_oracle(), rng)
        assert not bad.passed and bad.witness is not None


CLI_CASES = [
    (["delta", "--slot", "0", "--poly", "x2.json"], "delta_x2.expected.json", 0),
    (["integrate-poly", "--poly", "xz.json", "--slot", "0"], "integrate_poly_xz.expected.json", 1),
    (["eval", "--poly", "x2.json", "--points", "X.json"], "eval_x2_X.expected.json", 0),
]


def test_criterion_9_cli_golden(request, golden):
    with criterion(request, 9, "CLI golden files", 5):
        for argv, expected, code in CLI_CASES:
            out = subprocess.run([sys.executable, "-m", "ncad", *argv], capture_output=True, cwd=golden)
            assert out.returncode == code
            assert out.stdout == (golden / expected).read_bytes(), argv

import pytest
from hypothesis import given

import oracles
from ncad.diffcalc import (
    NcOracle,
    check_delta_commutation,
    delta_directional,
    delta_num,
    delta_oracle,
    delta_sym,
)
from ncad.errors import ComponentOutOfRange, SlotOutOfRange
from ncad.exactalg import Matrix, PointMatrix
from ncad.ncpoly import NcPolynomial, evaluate
from ncad.testkit import RngSpec
from strategies import poly_with_points, polys

X2 = NcPolynomial.monomial([1], [], [(1, 1)])


def poly_from_terms(xdims, zdims, terms):
    return NcPolynomial(xdims, zdims, [(([tuple(int(c) for c in w) for w in words], vs), c)
                                       for c, words, vs in terms])


def test_delta_sym_examples():
    assert delta_sym(X2, 0) == NcPolynomial([1, 1], [1], [((((), (1,)), (1,)), 1), ((((1,), ()), (1,)), 1)])
    x1x2 = NcPolynomial.monomial([2], [], [(1, 2)])
    want = poly_from_terms([2, 2], [2], oracles.naive_delta([(1, ["12"], [])], 0))
    assert delta_sym(x1x2, 0) == want
    assert [k for k in want.terms] == [(((), (2,)), (1,)), (((1,), ()), (2,))]
    assert delta_sym(NcPolynomial.monomial([1], [], [()], coeff=5), 0).is_zero()


def test_delta_sym_signature_and_errors():
    q = NcPolynomial.monomial([2, 3], [1], [(1,), (3,)], (1,))
    assert delta_sym(q, 1).xdims == (2, 3, 3) and delta_sym(q, 1).zdims == (1, 3)
    assert delta_sym(q, 0).xdims == (2, 2, 3) and delta_sym(q, 0).zdims == (2, 1)
    with pytest.raises(SlotOutOfRange):
        delta_sym(q, 2)


def test_delta_num_examples():
    f = NcOracle.from_poly(X2)
    assert delta_num(f, 0, [[[2]], [[3]]], [], [[1]]) == Matrix.from_rows([[5]])
    lin = NcOracle.from_poly(NcPolynomial.monomial([1], [], [(1,)]))
    d = Matrix.from_rows([[1, 2]])
    assert delta_num(lin, 0, [[[4]], [[1, 2], [3, 4]]], [], d) == d
    const = NcOracle.constant(3)
    assert delta_num(const, 0, [[[4]], [[5]]], [], [[7]]).is_zero()


def test_delta_directional_examples():
    p = NcPolynomial.monomial([2], [], [(1, 2)])
    f = NcOracle.from_poly(p)
    xs = [PointMatrix.from_rows([[1, 2], [0, 1]], [[0, 1], [1, 1]]), PointMatrix.from_rows([[3]], [[-1]])]
    a = Matrix.from_rows([[2], [5]])
    # only the z_1 term of delta_sym survives along component 1
    z1_term = NcPolynomial.monomial([2, 2], [2], [(), (2,)], (1,))
    direction = PointMatrix.of(a, Matrix.zeros(2, 1))
    assert delta_directional(f, 0, 1, xs, [], a) == evaluate(z1_term, xs, [direction])
    both = delta_directional(f, 0, 1, xs, [], a) + delta_directional(f, 0, 2, xs, [], a * 3)
    assert both == delta_num(f, 0, xs, [], PointMatrix.of(a, a * 3))
    with pytest.raises(ComponentOutOfRange):
        delta_directional(f, 0, 3, xs, [], a)


def test_delta_directional_dim_one_collapse():
    f = NcOracle.from_poly(X2)
    xs = [[[1, 1], [0, 2]], [[3]]]
    a = Matrix.from_rows([[1], [-1]])
    assert delta_directional(f, 0, 1, xs, [], a) == delta_num(f, 0, xs, [], a)


def test_commutation_examples():
    r = check_delta_commutation(X2, 0, 0)
    assert r.passed
    assert delta_sym(delta_sym(X2, 0), 1) == NcPolynomial.monomial([1, 1, 1], [1, 1], [(), (), ()], (1, 1))
    lin = NcPolynomial.monomial([1], [], [(1,)])
    assert delta_sym(delta_sym(lin, 0), 1).is_zero() and check_delta_commutation(lin, 0, 0).passed
    x3 = NcPolynomial.monomial([1], [], [(1, 1, 1)])
    assert check_delta_commutation(x3, 0, 0).passed
    assert len(delta_sym(delta_sym(x3, 0), 1)) == 3
    rng = RngSpec(7)
    second = NcOracle.from_poly(delta_sym(delta_sym(x3, 0), 1))
    numeric = delta_oracle(delta_oracle(NcOracle.from_poly(x3), 0), 1)
    xs, zs = rng.points((1, 1, 1), (1, 1), (2, 2, 2))
    assert second(xs, zs) == numeric(xs, zs)
    with pytest.raises(SlotOutOfRange):
        check_delta_commutation(X2, 1, 0)


@given(poly_with_points(max_order=2, max_size=3))
def test_symbolic_matches_oracle_and_numeric(case):
    p, _, _, rng = case
    for j in range(p.order + 1):
        q = delta_sym(p, j)
        assert q == poly_from_terms(q.xdims, q.zdims, oracles.naive_delta(oracles.terms_of(p), j))
        xs, zs = rng.points(q.xdims, q.zdims, [rng.integer(1, 3) for _ in q.xdims])
        assert evaluate(q, xs, zs) == delta_oracle(NcOracle.from_poly(p), j)(xs, zs)


@given(polys(max_order=2, degree=4))
def test_delta_commutation_property(p):
    for j in range(p.order + 1):
        for i in range(j + 1):
            assert check_delta_commutation(p, i, j).passed


@given(polys(max_order=0, max_dim=1, degree=4))
def test_first_order_difference_formula(q):
    rng = RngSpec(len(q))
    F = delta_sym(q, 0)
    x, w = rng.point(1, 2), rng.point(1, 3)
    r = rng.matrix(3, 2)
    lhs = r @ evaluate(q, [x]) - evaluate(q, [w]) @ r
    rhs = evaluate(F, [w, x], [PointMatrix.of(r @ x.components[0] - w.components[0] @ r)])
    assert lhs == rhs


@given(poly_with_points(max_order=1))
def test_delta_num_linear_in_direction(case):
    p, _, _, rng = case
    f = NcOracle.from_poly(p)
    j = rng.integer(0, p.order)
    d = delta_oracle(f, j)
    xs, zs = rng.points(d.xdims, d.zdims, [rng.integer(1, 2) for _ in d.xdims])
    other = rng.point(zs[j].dim, zs[j].rows, zs[j].cols)
    a = rng.scalar()
    mixed = list(zs)
    mixed[j] = zs[j] + other * a
    alt = list(zs)
    alt[j] = other
    assert d(xs, mixed) == d(xs, zs) + d(xs, alt) * a

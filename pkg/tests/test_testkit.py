from hypothesis import given
from hypothesis import strategies as st

from ncad import jsonio
from ncad.diffcalc import NcOracle
from ncad.exactalg import Matrix
from ncad.testkit import (
    RngSpec,
    check_respects_structure,
    entrywise_square_oracle,
    perturb_coefficient,
    random_eigen_triple,
    random_idempotent,
    random_poly,
)
from strategies import polys


def test_random_poly_bounds():
    rng = RngSpec(1)
    assert random_poly(0, [1], [], 3, 0, rng).is_zero()
    p = random_poly(1, [2, 2], [1], 0, 5, rng)
    assert all(not w for key in p.terms for w in key[0])


def test_random_poly_reproducible():
    a = jsonio.dumps(jsonio.encode_poly(random_poly(0, [1], [], 3, 5, RngSpec(42))))
    b = jsonio.dumps(jsonio.encode_poly(random_poly(0, [1], [], 3, 5, RngSpec(42))))
    assert a == b
    assert random_poly(2, [1, 2, 1], [2, 1], 4, 6, RngSpec(3)).degree() <= 4


def test_idempotent_extremes():
    rng = RngSpec(5)
    assert random_idempotent(3, rng, rank=3) == Matrix.identity(3)
    assert random_idempotent(3, rng, rank=0).is_zero()


@given(st.integers(0, 2**32), st.integers(1, 4))
def test_idempotent_property(seed, n):
    p = random_idempotent(n, RngSpec(seed))
    assert p @ p == p


@given(st.integers(0, 2**32), st.integers(1, 4))
def test_invertible_pair(seed, n):
    s, inv = RngSpec(seed).invertible(n)
    assert s @ inv == Matrix.identity(n) and inv @ s == Matrix.identity(n)


@given(st.integers(0, 2**32), st.integers(1, 4))
def test_eigen_triple_relations(seed, n):
    a, b, c, lam = random_eigen_triple(n, RngSpec(seed))
    assert a @ b == a * lam and b @ c == c * lam


@given(polys(max_order=2, max_dim=2, degree=3))
def test_polynomials_respect_structure(p):
    assert check_respects_structure(NcOracle.from_poly(p), RngSpec(len(p)), samples=1).passed


def test_structure_examples():
    rng = RngSpec(8)
    assert check_respects_structure(NcOracle.zero((1, 2), (1,)), rng).passed
    rep = check_respects_structure(entrywise_square_oracle(), rng)
    assert not rep.passed and rep.witness["axiom"] == "similarity"


def test_perturbation_targets_nonsingleton_classes():
    from ncad.diffcalc import delta_sym
    from ncad.ncpoly import NcPolynomial

    lin = delta_sym(NcPolynomial.monomial([1], [], [(1,)]), 0)
    assert perturb_coefficient(lin, 0, RngSpec(0)) is None
    sq = delta_sym(NcPolynomial.monomial([1], [], [(1, 1)]), 0)
    assert perturb_coefficient(sq, 0, RngSpec(0)) != sq

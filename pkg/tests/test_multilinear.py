from hypothesis import given
from hypothesis import strategies as st

from ncad.exactalg import Matrix, PointMatrix
from ncad.multilinear import MultiLinearMap
from ncad.testkit import RngSpec


def sandwich_map(a: Matrix, b: Matrix, c: Matrix):
    """(Z1, Z2) -> A Z1_1 B Z2_2 C, dims (1, 2)."""
    return lambda zs: a @ zs[0].components[0] @ b @ zs[1].components[1] @ c


def build(seed):
    rng = RngSpec(seed)
    a, b, c = rng.matrix(2, 2), rng.matrix(3, 3), rng.matrix(2, 2)
    shapes = [(2, 3, 1), (3, 2, 2)]
    fn = sandwich_map(a, b, c)
    return rng, shapes, fn, MultiLinearMap.from_callable(shapes, (2, 2), fn)


@given(st.integers(0, 2**32))
def test_from_callable_reproduces_function(seed):
    rng, shapes, fn, g = build(seed)
    zs = [rng.point(d, r, c) for r, c, d in shapes]
    assert g(zs) == fn(zs)


@given(st.integers(0, 2**32))
def test_actions_match_definitions(seed):
    rng, shapes, fn, g = build(seed)
    z1, z2 = (rng.point(d, r, c) for r, c, d in shapes)
    s0, s1, s2 = rng.matrix(2, 2), rng.matrix(3, 3), rng.matrix(2, 2)
    assert g.left_action(s0, 0)([z1, z2]) == s0 @ fn([z1, z2])
    assert g.right_action(s0, 0)([z1, z2]) == fn([z1.lmul(s0), z2])
    assert g.left_action(s1, 1)([z1, z2]) == fn([z1.rmul(s1), z2])
    assert g.right_action(s1, 1)([z1, z2]) == fn([z1, z2.lmul(s1)])
    assert g.left_action(s2, 2)([z1, z2]) == fn([z1, z2.rmul(s2)])
    assert g.right_action(s2, 2)([z1, z2]) == fn([z1, z2]) @ s2
    assert g.bracket(s1, 1) == g.left_action(s1, 1) - g.right_action(s1, 1)


@given(st.integers(0, 2**32))
def test_precompose_and_linear_structure(seed):
    rng, shapes, fn, g = build(seed)
    zs = [rng.point(d, r, c) for r, c, d in shapes]
    assert (g + g - g * 2).is_zero()
    assert (g * 3)(zs) == fn(zs) * 3
    left = rng.matrix(3, 2)
    assert g.left_multiply(left)(zs) == left @ fn(zs)
    right = rng.matrix(2, 1)
    assert g.right_multiply(right)(zs) == fn(zs) @ right


def test_constant_and_amplify():
    m = Matrix.from_rows([[1, 2], [3, 4]])
    c = MultiLinearMap.constant(m)
    assert c() == m
    assert c.amplified([], [2]) == Matrix.identity(2).kron(m)


def test_amplify_block_form():
    # g(Z1, Z2) = Z1 Z2 on 1x1 blocks; amplified on m = (2, 2, 2) is the ordinary product
    g = MultiLinearMap.from_callable([(1, 1, 1), (1, 1, 1)], (1, 1),
                                     lambda zs: zs[0].components[0] @ zs[1].components[0])
    a = PointMatrix.from_rows([[1, 2], [3, 4]])
    b = PointMatrix.from_rows([[0, 1], [5, -1]])
    assert g.amplified([a, b], [2, 2, 2]) == a.components[0] @ b.components[0]

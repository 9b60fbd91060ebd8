import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ncad import _kernels_py

try:
    from ncad import _kernels
except ImportError:
    _kernels = None

BACKENDS = [_kernels_py] + ([_kernels] if _kernels is not None else [])


@st.composite
def int_operands(draw):
    n, m, p = (draw(st.integers(1, 5)) for _ in range(3))
    big = draw(st.sampled_from([10, 10**9, 10**40]))
    ints = st.integers(-big, big)
    a = draw(st.lists(ints, min_size=n * m, max_size=n * m))
    b = draw(st.lists(ints, min_size=m * p, max_size=m * p))
    return a, b, n, m, p


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
@given(ops=int_operands())
def test_int_matmul_matches_oracle(mod, ops):
    a, b, n, m, p = ops
    want = oracles.mul([a[i * m:(i + 1) * m] for i in range(n)], [b[i * p:(i + 1) * p] for i in range(m)])
    got = mod.int_matmul(a, b, n, m, p)
    assert [got[i * p:(i + 1) * p] for i in range(n)] == [[int(v) for v in r] for r in want]


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_empty_dimensions(mod):
    assert mod.int_matmul([], [], 2, 0, 3) == [0] * 6
    assert mod.int_matmul([], [1, 2], 0, 1, 2) == []


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_overflow_boundary_uses_exact_path(mod):
    big = 2**31
    assert mod.int_matmul([big, big], [big, big], 1, 2, 1) == [2 * big * big]
    huge = 2**62
    assert mod.int_matmul([huge], [huge], 1, 1, 1) == [huge * huge]


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_content(mod):
    assert mod.content([6, 9, 12], 0) == 3
    assert mod.content([5, 7], 0) == 1
    assert mod.content([], 4) == 4


def test_compiled_backend_is_selected():
    import ncad

    if _kernels is None:
        pytest.skip("compiled kernels not built")
    if os.environ.get("NCAD_PURE_PYTHON", "") not in ("", "0"):
        pytest.skip("fallback forced by NCAD_PURE_PYTHON")
    assert ncad.BACKEND == "cython"


def test_pure_python_override():
    env = dict(os.environ, NCAD_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import ncad; print(ncad.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"

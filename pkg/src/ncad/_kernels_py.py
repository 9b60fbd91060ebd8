"""Pure-Python integer kernels (fallback when the compiled core is absent)."""

from math import gcd
from operator import mul

BACKEND = "python"


def int_matmul(a, b, n, m, p):
    """Row-major product of an n x m and an m x p integer matrix."""
    if m == 0:
        return [0] * (n * p)
    cols = [b[k::p] for k in range(p)]
    out = []
    append = out.append
    for i in range(n):
        row = a[i * m:(i + 1) * m]
        for col in cols:
            append(sum(map(mul, row, col)))
    return out


def content(values, start):
    """gcd of ``start`` and every entry of ``values``."""
    g = start
    for v in values:
        if g == 1:
            return 1
        g = gcd(g, v)
    return g

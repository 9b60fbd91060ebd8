# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels.

``int_matmul`` runs on C ``long long`` whenever the operand magnitudes bound
every partial sum below 2**62; otherwise it falls back to Python integers.
"""

import array
from math import gcd

BACKEND = "cython"

cdef long long _LIMIT = 1LL << 62


cdef object _absmax(list xs):
    cdef object best = 0
    cdef object v
    for v in xs:
        if v < 0:
            v = -v
        if v > best:
            best = v
    return best


def int_matmul(list a, list b, Py_ssize_t n, Py_ssize_t m, Py_ssize_t p):
    cdef Py_ssize_t i, j, t
    cdef long long acc
    cdef long long[::1] av, bv
    cdef list out = [0] * (n * p)
    cdef object big, s
    if n == 0 or p == 0:
        return out
    if m == 0:
        return out
    big = _absmax(a) * _absmax(b) * m
    if big < _LIMIT:
        av = array.array("q", a)
        bv = array.array("q", b)
        for i in range(n):
            for j in range(p):
                acc = 0
                for t in range(m):
                    acc += av[i * m + t] * bv[t * p + j]
                out[i * p + j] = acc
        return out
    for i in range(n):
        for j in range(p):
            s = 0
            for t in range(m):
                s += a[i * m + t] * b[t * p + j]
            out[i * p + j] = s
    return out


def content(values, start):
    cdef object g = start
    cdef object v
    for v in values:
        if g == 1:
            return 1
        g = gcd(g, v)
    return g

"""Independent reference implementations used to produce expected values.

Everything here works on plain nested lists of Fractions and on monomials
written as strings, sharing no code with the package.
"""

from fractions import Fraction


def mat(rows):
    return [[Fraction(v) for v in r] for r in rows]


def eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def mul(a, b):
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(inner)), Fraction(0)) for j in range(cols)]
            for i in range(len(a))]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def smul(c, a):
    return [[c * x for x in r] for r in a]


def block_upper(x, z, w):
    n, m = len(x), len(w)
    top = [list(x[i]) + list(z[i]) for i in range(n)]
    bottom = [[Fraction(0)] * n + list(w[i]) for i in range(m)]
    return top + bottom


# A term is (coeff, [word strings], [z letters]); a word is a string of
# 1-based letter digits, so x^0 word (1, 2), z letter 1, empty x^1 word is
# (c, ["12", ""], [1]).


def words_of(key):
    words, zs = key
    return ["".join(str(a) for a in w) for w in words], list(zs)


def naive_eval(terms, xs, zs):
    """terms: list of (coeff, [word strings], [z letters]); xs/zs: lists of component lists."""
    n0 = len(xs[0][0])
    nk = len(xs[-1][0])
    out = zeros(n0, nk)
    for coeff, words, vs in terms:
        acc = eye(n0)
        for j, w in enumerate(words):
            if j > 0:
                acc = mul(acc, zs[j - 1][vs[j - 1] - 1])
            for ch in w:
                acc = mul(acc, xs[j][int(ch) - 1])
        out = add(out, smul(Fraction(coeff), acc))
    return out


def naive_delta(terms, j):
    """Split word j at every letter: text slicing over the word string."""
    out = []
    for coeff, words, vs in terms:
        w = words[j]
        for i in range(len(w)):
            out.append((coeff, words[:j] + [w[:i], w[i + 1:]] + words[j + 1:], vs[:j] + [int(w[i])] + vs[j:]))
    return _merge(out)


def _merge(terms):
    acc = {}
    for coeff, words, vs in terms:
        key = (tuple(words), tuple(vs))
        acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
    return sorted((c, list(k[0]), list(k[1])) for k, c in acc.items() if c != 0)


def terms_of(poly):
    """Package polynomial -> oracle term list."""
    return _merge([(c, *words_of(key)) for key, c in poly.terms.items()])


def components(point):
    return [[list(r) for r in m.tolist()] for m in point.components]

"""Integral LLL reduction (all-integer Gram-Schmidt bookkeeping)."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["lll_reduce"]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _round_div(a: int, b: int) -> int:
    # nearest integer to a/b, b > 0
    return (2 * a + b) // (2 * b)


def lll_reduce(basis, delta=Fraction(99, 100)):
    """LLL-reduce a list of linearly independent integer row vectors.

    Works only with integers: d_i are the Gram determinants and lam[k][j]
    the scaled Gram-Schmidt coefficients d_{j+1} * mu_{kj}.
    """
    b = [list(map(int, v)) for v in basis]
    n = len(b)
    if n == 0:
        return b
    delta = Fraction(delta)
    dn, dd = delta.numerator, delta.denominator
    d = [1] * (n + 1)          # d[0] = 1, d[i+1] belongs to vector i
    lam = [[0] * n for _ in range(n)]

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = _round_div(lam[k][l], d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k + 1]
        d[k] = B

    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise ValueError("zero basis vector")
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = _dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("basis vectors are linearly dependent")
                    d[k + 1] = u
        red(k, k - 1)
        lm = lam[k][k - 1]
        if dd * (d[k + 1] * d[k - 1] + lm * lm) < dn * d[k] * d[k]:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b

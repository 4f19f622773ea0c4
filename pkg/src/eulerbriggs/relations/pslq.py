"""PSLQ integer-relation search in binary fixed-point arithmetic.

Follows Ferguson-Bailey-Arno with gamma = sqrt(4/3). Only the B matrix is
tracked (relations are its columns). The norm bound 1/max|H_jj| holds at
every step: no integer relation of smaller Euclidean norm exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import mpmath

from ..errors import RelationSearchError

__all__ = ["PSLQOutcome", "pslq"]


@dataclass(frozen=True)
class PSLQOutcome:
    relation: tuple[int, ...] | None
    norm_bound: mpmath.mpf  # no relation with ||c||_2 below this exists
    iterations: int


def _nint_div(a: int, b: int) -> int:
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


def pslq(x, digits: int, max_norm, *, tolerance_digits: int | None = None,
         max_iterations: int = 1_000_000) -> PSLQOutcome:
    """Search for integer c != 0 with sum c_i x_i = 0.

    ``x`` holds mpf values accurate to ``digits`` decimal digits. The search
    stops with a relation once some |y_i| < 10**-tolerance_digits (default
    3/4 of ``digits``), or with ``relation=None`` once the norm bound reaches
    ``max_norm``.
    """
    n = len(x)
    if n < 2:
        raise ValueError("need at least two numbers")
    tol_digits = tolerance_digits if tolerance_digits is not None else (3 * digits) // 4
    prec = int((digits + 10) * 3.3219280948873626) + 16
    one = 1 << prec

    with mpmath.workdps(digits + 15):
        xs = [mpmath.mpf(v) for v in x]
        scale = max(abs(v) for v in xs)
        if scale == 0 or any(v == 0 for v in xs):
            raise ValueError("pslq needs non-zero entries")
        fx = [int(mpmath.nint(mpmath.ldexp(v / scale, prec))) for v in xs]
        tol = int(mpmath.ldexp(mpmath.mpf(10) ** (-tol_digits), prec)) + 1
        max_norm_mp = mpmath.mpf(max_norm)

    # partial norms s_k = sqrt(sum_{j>=k} x_j^2)
    s = [0] * n
    acc = 0
    for k in range(n - 1, -1, -1):
        acc += fx[k] * fx[k]
        s[k] = isqrt(acc)
    t = s[0]
    y = [(v << prec) // t for v in fx]
    s = [(v << prec) // t for v in s]

    H = [[0] * (n - 1) for _ in range(n)]
    for i in range(n):
        if i <= n - 2:
            if s[i] == 0:
                raise RelationSearchError("degenerate input vector")
            H[i][i] = (s[i + 1] << prec) // s[i]
        for j in range(min(i, n - 1)):
            sjj1 = s[j] * s[j + 1]
            if sjj1 == 0:
                raise RelationSearchError("degenerate input vector")
            H[i][j] = -((y[i] * y[j]) << prec) // sjj1

    B = [[int(i == j) for j in range(n)] for i in range(n)]

    def reduce_entry(i, j):
        hjj = H[j][j]
        if hjj == 0:
            return
        q = _nint_div(H[i][j], hjj)
        if q == 0:
            return
        y[j] += q * y[i]
        Hi, Hj = H[i], H[j]
        for k in range(j + 1):
            Hi[k] -= q * Hj[k]
        for row in B:
            row[j] += q * row[i]

    for i in range(1, n):
        for j in range(min(i - 1, n - 2), -1, -1):
            reduce_entry(i, j)

    # gamma^i weights, scaled to integers
    gpow = [int((4 / 3) ** ((i + 1) / 2) * (1 << 40)) for i in range(n)]

    def check_relation():
        best = None
        for i in range(n):
            if abs(y[i]) < tol:
                c = tuple(B[k][i] for k in range(n))
                if any(c) and (best is None or max(map(abs, c)) < max(map(abs, best))):
                    best = c
        return best

    def bound():
        mx = max(abs(H[i][i]) for i in range(n - 1))
        if mx == 0:
            return mpmath.inf
        with mpmath.workdps(30):
            return mpmath.mpf(one) / mx

    rel = check_relation()
    if rel is not None:
        return PSLQOutcome(rel, bound(), 0)

    limit_bits = prec - 20
    for it in range(1, max_iterations + 1):
        m = max(range(n - 1), key=lambda i: gpow[i] * abs(H[i][i]))
        y[m], y[m + 1] = y[m + 1], y[m]
        H[m], H[m + 1] = H[m + 1], H[m]
        for row in B:
            row[m], row[m + 1] = row[m + 1], row[m]
        if m < n - 2:
            a, b = H[m][m], H[m][m + 1]
            t0 = isqrt(a * a + b * b)
            if t0 == 0:
                raise RelationSearchError("precision exhausted (zero pivot)")
            t1 = (a << prec) // t0
            t2 = (b << prec) // t0
            for i in range(m, n):
                t3, t4 = H[i][m], H[i][m + 1]
                H[i][m] = (t1 * t3 + t2 * t4) >> prec
                H[i][m + 1] = (-t2 * t3 + t1 * t4) >> prec
        for i in range(m + 1, n):
            for j in range(min(i - 1, m + 1), -1, -1):
                reduce_entry(i, j)

        rel = check_relation()
        if rel is not None:
            return PSLQOutcome(rel, bound(), it)
        nb = bound()
        if nb >= max_norm_mp:
            return PSLQOutcome(None, nb, it)
        if any(abs(B[i][j]).bit_length() > limit_bits for i in range(n) for j in range(n)):
            raise RelationSearchError(
                f"precision exhausted after {it} iterations (norm bound {mpmath.nstr(nb, 5)})")
    raise RelationSearchError("iteration limit reached")

"""Accelerated summation of periodic harmonic sums.

For weights w_r attached to residues 1 <= r <= m, this evaluates

    C = lim_{K -> oo}  sum_r w_r sum_{0 <= k < K} 1/(k m + r)  -  (W/m) log(K m),

with W = sum_r w_r, by summing K complete blocks directly and correcting the
tail with the Euler-Maclaurin (Stirling) expansion

    sum_{k<K} 1/(k + c) - log K = psi(K + c) - psi(c) - log K,
    psi(z) - log z ~ -1/(2z) - sum_j B_2j / (2j z^2j).

For real z > 0 that expansion is enveloping: the truncation error is smaller
than the first omitted term, which gives an explicit error bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

__all__ = ["ProgressionSum", "progression_constant"]

MIN_ORDER = 8
MAX_LOG2_BLOCKS = 40


@dataclass(frozen=True)
class ProgressionSum:
    value: mpmath.mpf
    error_bound: mpmath.mpf
    blocks: int
    order: int

    @property
    def achieved_digits(self) -> int:
        if self.error_bound == 0:
            return 10**6
        return max(0, int(-mpmath.log10(self.error_bound)))


_bern_cache: dict[tuple[int, int], mpmath.mpf] = {}


def _bernoulli(n: int, dps: int):
    key = (n, dps)
    if key not in _bern_cache:
        with mpmath.workdps(dps):
            _bern_cache[key] = mpmath.bernoulli(n)
    return _bern_cache[key]


def _term_bound(order: int, z, dps: int):
    n = 2 * order + 2
    return abs(_bernoulli(n, dps)) / (n * z**n)


def _pick_order(K: int, minc, target, dps: int):
    """Smallest order >= MIN_ORDER whose remainder bound at z = K + minc is below target."""
    z = K + minc
    order = MIN_ORDER
    best = _term_bound(order, z, dps)
    while best > target:
        # terms stop decreasing once (2J+2)(2J+3) exceeds (2 pi z)^2
        if (2 * order + 4) * (2 * order + 5) > (2 * mpmath.pi * z) ** 2 or order > 2000:
            break
        order += 1
        best = _term_bound(order, z, dps)
    return order, best


def _tail_correction(weights, m: int, K: int, order: int, dps: int):
    """sum_r (w_r/m) [psi(K + r/m) - log K], via the asymptotic expansion."""
    total = mpmath.mpf(0)
    bern = [_bernoulli(2 * j, dps) for j in range(1, order + 1)]
    for r, w in weights:
        c = mpmath.mpf(r) / m
        z = K + c
        s = mpmath.log1p(c / K) - 1 / (2 * z)
        z2 = z * z
        zp = z2
        for j, b in enumerate(bern, start=1):
            s -= b / (2 * j * zp)
            zp *= z2
        total += w * s / m
    return total


def progression_constant(weights, m: int, digits: int, *, working: int | None = None,
                         min_log2_blocks: int = 4) -> ProgressionSum:
    """Evaluate the regularised periodic sum described in the module docstring.

    ``weights`` is an iterable of (r, w_r) pairs with 1 <= r <= m; the w_r are
    mpf (or anything mpmath can absorb). Blocks are doubled, K = 2**k, until the
    remainder bound drops below 10**-digits, with k capped at 40.
    """
    weights = [(int(r), w) for r, w in weights if w != 0]
    dps = working if working is not None else digits + 20
    with mpmath.workdps(dps):
        if not weights:
            return ProgressionSum(mpmath.mpf(0), mpmath.mpf(0), 0, 0)
        weights = [(r, mpmath.mpf(w) if not isinstance(w, mpmath.mpf) else w) for r, w in weights]
        W = mpmath.fsum(w for _, w in weights)
        wabs = mpmath.fsum(abs(w) for _, w in weights)
        minc = mpmath.mpf(min(r for r, _ in weights)) / m
        target = mpmath.mpf(10) ** (-digits - 2)

        partial = mpmath.mpf(0)
        done = 0
        k = min_log2_blocks
        while True:
            K = 2**k
            order, bound = _pick_order(K, minc, target / max(wabs / m, 1), dps)
            bound = bound * wabs / m
            if bound <= target or k >= MAX_LOG2_BLOCKS:
                break
            k += 1
        # direct summation of K complete blocks
        for blk in range(done, K):
            base = blk * m
            partial += mpmath.fsum(w / (base + r) for r, w in weights)
        value = partial - W / m * mpmath.log(K * m) - _tail_correction(weights, m, K, order, dps)
        # rounding in the direct sum: ~ one ulp per term
        rounding = mpmath.mpf(10) ** (-dps + 1) * K * len(weights) * max(wabs, 1)
        return ProgressionSum(+value, bound + rounding, K, order)

"""Fixed-precision real arithmetic on top of mpmath.

Every value carries the :class:`PrecisionContext` it was computed under.
Computation happens at ``digits + guard`` decimal digits; results are
promised to ``digits``.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import CrossCheckError, DomainError

__all__ = [
    "PrecisionContext",
    "BigReal",
    "const_pi",
    "const_gamma",
    "log_natural",
    "to_fraction",
    "mpf_fraction",
    "clear_memo",
]

DEFAULT_GUARD = 20


@dataclass(frozen=True)
class PrecisionContext:
    digits: int
    guard: int = DEFAULT_GUARD

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 10:
            raise ValueError(f"digits must be an integer >= 10, got {self.digits!r}")
        if int(self.guard) != self.guard or self.guard < 0:
            raise ValueError(f"guard must be a non-negative integer, got {self.guard!r}")

    @property
    def working(self) -> int:
        return self.digits + self.guard

    def eps(self):
        """10**-digits as an mpf."""
        with mpmath.workdps(self.working):
            return mpmath.mpf(10) ** (-self.digits)

    def with_guard(self, guard: int) -> "PrecisionContext":
        return PrecisionContext(self.digits, guard)

    def widened(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.digits + extra, self.guard)

    @contextmanager
    def activate(self):
        with mpmath.workdps(self.working):
            yield


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def mpf_fraction(x) -> mpmath.mpf:
    """Embed an exact rational at the current mpmath precision."""
    x = to_fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass(frozen=True)
class BigReal:
    """A high-precision real together with the context that produced it.

    ``achieved`` is set only when fewer than ``ctx.digits`` digits could be
    certified (the direct-summation oracle reports this).
    """

    value: mpmath.mpf
    ctx: PrecisionContext
    achieved: int | None = field(default=None, compare=False)

    @property
    def digits(self) -> int:
        return self.ctx.digits if self.achieved is None else min(self.achieved, self.ctx.digits)

    def decimal(self, digits: int | None = None) -> str:
        """Plain decimal string rounded to ``digits`` significant digits."""
        n = self.digits if digits is None else digits
        with mpmath.workdps(self.ctx.working):
            return mpmath.nstr(self.value, n, min_fixed=-mpmath.inf, max_fixed=mpmath.inf,
                               strip_zeros=False)

    def __str__(self):
        return self.decimal()

    def __repr__(self):
        return f"BigReal({self.decimal(min(self.digits, 20))}..., digits={self.digits})"

    def __float__(self):
        return float(self.value)

    # Arithmetic keeps the weaker of the two contexts.
    def _coerce(self, other):
        if isinstance(other, BigReal):
            ctx = self.ctx if self.ctx.digits <= other.ctx.digits else other.ctx
            ach = [v.achieved for v in (self, other) if v.achieved is not None]
            return other.value, ctx, (min(ach) if ach else None)
        if isinstance(other, (int, Fraction)):
            with self.ctx.activate():
                return mpf_fraction(other), self.ctx, self.achieved
        return NotImplemented

    def _binary(self, other, op):
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        v, ctx, ach = coerced
        with ctx.activate():
            return BigReal(op(self.value, v), ctx, ach)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        with self.ctx.activate():
            return BigReal(-self.value, self.ctx, self.achieved)

    def __abs__(self):
        with self.ctx.activate():
            return BigReal(abs(self.value), self.ctx, self.achieved)

    @classmethod
    def from_decimal(cls, text: str, ctx: PrecisionContext) -> "BigReal":
        with ctx.activate():
            return cls(mpmath.mpf(text), ctx)


# -- process-wide memo -------------------------------------------------------
# name -> (working digits, value); a hit at higher precision serves lower requests.
_memo: dict[str, tuple[int, mpmath.mpf]] = {}
_memo_lock = threading.Lock()


def clear_memo():
    with _memo_lock:
        _memo.clear()


def _memoized(name: str, working: int, compute):
    hit = _memo.get(name)
    if hit is not None and hit[0] >= working:
        with mpmath.workdps(working):
            return +hit[1]
    value = compute()
    with _memo_lock:
        cur = _memo.get(name)
        if cur is None or cur[0] < working:
            _memo[name] = (working, value)
    return value


def _cross_checked(name, ctx, primary, secondary):
    """Evaluate ``name`` twice by independent methods; retry once with doubled guard."""
    guard = max(ctx.guard, 4)
    for _ in range(2):
        working = ctx.digits + guard
        with mpmath.workdps(working):
            a = primary(working)
            b = secondary(working)
            tol = mpmath.mpf(10) ** (-(ctx.digits + guard // 2))
            if abs(a - b) <= tol * max(1, abs(a)):
                return a
        guard *= 2
    raise CrossCheckError(f"{name}: independent evaluations disagree at {ctx.digits} digits")


# -- pi ----------------------------------------------------------------------

def _bits(dps: int) -> int:
    return int(dps * 3.3219280948873626) + 16


def _atan_inv_fixed(x: int, one: int) -> int:
    """arctan(1/x) * one, by the alternating Gregory series in integers."""
    x2 = x * x
    term = one // x
    total = term
    k = 1
    sign = -1
    while term:
        term //= x2
        k += 2
        total += sign * (term // k)
        sign = -sign
    return total


def _pi_machin(dps: int) -> mpmath.mpf:
    prec = _bits(dps) + 10
    one = 1 << prec
    fixed = 4 * (4 * _atan_inv_fixed(5, one) - _atan_inv_fixed(239, one))
    return mpmath.mpf((fixed, -prec))


def _pi_agm(dps: int) -> mpmath.mpf:
    # Gauss-Legendre iteration, quadratically convergent.
    with mpmath.workdps(dps + 10):
        a = mpmath.mpf(1)
        b = 1 / mpmath.sqrt(2)
        t = mpmath.mpf(1) / 4
        p = mpmath.mpf(1)
        tol = mpmath.mpf(10) ** (-(dps + 5))
        while abs(a - b) > tol:
            an = (a + b) / 2
            b = mpmath.sqrt(a * b)
            t -= p * (a - an) ** 2
            a = an
            p *= 2
        res = (a + b) ** 2 / (4 * t)
    return +res


def const_pi(ctx: PrecisionContext) -> BigReal:
    value = _memoized(
        "pi", ctx.working,
        lambda: _cross_checked("pi", ctx, _pi_machin, _pi_agm),
    )
    return BigReal(value, ctx)


# -- Euler's constant ----------------------------------------------------------

def _gamma_brent_mcmillan(dps: int) -> mpmath.mpf:
    """Brent-McMillan (B1): gamma = U/V with error below pi*exp(-4n)."""
    n = int(math.ceil((dps + 5) * math.log(10) / 4)) + 1
    prec = _bits(dps) + 32
    one = 1 << prec
    with mpmath.workdps(dps + 15):
        log_n = mpmath.log(n)
    a = -int(mpmath.floor(mpmath.ldexp(log_n, prec)))
    b = one
    u, v = a, b
    n2 = n * n
    k = 1
    while True:
        b = b * n2 // (k * k)
        a = (a * n2 // k + b) // k
        u += a
        v += b
        if abs(a) < 2 and b < 2:
            break
        k += 1
    return mpmath.mpf(u) / v


def _gamma_reference(dps: int) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return +mpmath.euler


def const_gamma(ctx: PrecisionContext) -> BigReal:
    value = _memoized(
        "gamma", ctx.working,
        lambda: _cross_checked("gamma", ctx, _gamma_brent_mcmillan, _gamma_reference),
    )
    return BigReal(value, ctx)


# -- logarithms ----------------------------------------------------------------

def log_natural(x, ctx: PrecisionContext) -> BigReal:
    """Natural log of a positive rational ``x`` (int, Fraction or 'p/q')."""
    x = to_fraction(x)
    if x <= 0:
        raise DomainError(f"log of non-positive number {x}")

    def compute():
        with mpmath.workdps(ctx.working):
            return mpmath.log(x.numerator) - mpmath.log(x.denominator)

    value = _memoized(f"log:{x}", ctx.working, compute)
    return BigReal(value, ctx)

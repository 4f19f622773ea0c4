"""L(1, chi) for non-principal Dirichlet characters.

Two routes:

* ``l_one_digamma`` -- the finite closed form
  L(1, chi) = -(1/q) sum_{a=1}^{q-1} chi(a) psi(a/q), with psi(a/q) from
  Gauss's digamma theorem. This is the route used everywhere else.
* ``l_one_series`` -- direct summation of sum chi(n)/n over complete periods
  with an Euler-Maclaurin tail; kept only as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .arith import BigReal, PrecisionContext, const_gamma, const_pi, log_natural
from .characters import DirichletCharacter, RootOfUnity, conjugate, evaluate
from .errors import DomainError
from .summation import progression_constant

__all__ = ["LValue", "digamma_rational", "l_one_digamma", "l_one_series", "embed_root"]

DIVERGENT = "divergent: principal character"


@dataclass(frozen=True)
class LValue:
    chi: DirichletCharacter
    real_part: BigReal
    imag_part: BigReal
    route: str

    @property
    def value(self) -> mpmath.mpc:
        with self.real_part.ctx.activate():
            return mpmath.mpc(self.real_part.value, self.imag_part.value)

    def conjugate(self) -> "LValue":
        return LValue(conjugate(self.chi), self.real_part, -self.imag_part, self.route)


def embed_root(z: RootOfUnity):
    """(cos, sin) of an exact root of unity at the current precision."""
    if z.zero:
        return mpmath.mpf(0), mpmath.mpf(0)
    t = 2 * z.turn
    x = mpmath.mpf(t.numerator) / t.denominator
    return mpmath.cospi(x), mpmath.sinpi(x)


def _rat(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


@lru_cache(maxsize=4096)
def _digamma_mpf(a: int, q: int, working: int) -> mpmath.mpf:
    ctx = PrecisionContext(max(working - 20, 10), 20)
    g = const_gamma(ctx).value
    if a == q:
        with mpmath.workdps(working):
            return -g
    with mpmath.workdps(working):
        # psi(a/q) = -gamma - log(2q) - (pi/2) cot(pi a/q)
        #            + 2 sum_{k=1}^{floor((q-1)/2)} cos(2 pi k a/q) log sin(pi k/q)
        pi = const_pi(ctx).value
        x = _rat(Fraction(a, q))
        s = -g - log_natural(2 * q, ctx).value - pi / 2 * mpmath.cospi(x) / mpmath.sinpi(x)
        acc = mpmath.mpf(0)
        for k in range(1, (q - 1) // 2 + 1):
            acc += mpmath.cospi(_rat(Fraction(2 * k * a, q) % 2)) * mpmath.log(mpmath.sinpi(_rat(Fraction(k, q))))
        return s + 2 * acc


def digamma_rational(a: int, q: int, ctx: PrecisionContext) -> BigReal:
    """psi(a/q) for 1 <= a <= q, by Gauss's finite formula."""
    if not (isinstance(a, int) and isinstance(q, int)) or q < 1 or not 1 <= a <= q:
        raise DomainError(f"digamma_rational needs 1 <= a <= q, got a={a}, q={q}")
    g = gcd(a, q)
    return BigReal(_digamma_mpf(a // g, q // g, ctx.working), ctx)


def _check(chi: DirichletCharacter):
    if chi.principal:
        raise DomainError(DIVERGENT)


@lru_cache(maxsize=4096)
def _l_digamma(chi: DirichletCharacter, working: int):
    q = chi.modulus
    ctx = PrecisionContext(max(working - 20, 10), 20)
    with mpmath.workdps(working):
        re = mpmath.mpf(0)
        im = mpmath.mpf(0)
        for a in range(1, q):
            c, s = embed_root(evaluate(chi, a))
            if c == 0 and s == 0:
                continue
            psi = _digamma_mpf(*_reduce(a, q), working)
            re += c * psi
            im += s * psi
        return -re / q, -im / q


def _reduce(a, q):
    g = gcd(a, q)
    return a // g, q // g


def l_one_digamma(chi: DirichletCharacter, ctx: PrecisionContext) -> LValue:
    _check(chi)
    re, im = _l_digamma(chi, ctx.working)
    return LValue(chi, BigReal(re, ctx), BigReal(im, ctx), "digamma")


def l_one_series(chi: DirichletCharacter, ctx: PrecisionContext) -> LValue:
    """sum chi(n)/n over complete periods plus an explicit tail correction."""
    _check(chi)
    q = chi.modulus
    with ctx.activate():
        cs = [(a, embed_root(evaluate(chi, a))) for a in range(1, q + 1)]
        parts = []
        for idx in (0, 1):
            ps = progression_constant([(a, v[idx]) for a, v in cs], q, ctx.digits,
                                      working=ctx.working)
            parts.append(BigReal(ps.value, ctx, min(ps.achieved_digits, ctx.digits)))
    return LValue(chi, parts[0], parts[1], "series")

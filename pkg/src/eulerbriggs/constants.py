"""Generalized Euler-Briggs constants gamma(Omega, a, q).

    gamma(Omega, a, q) = lim_{x->oo} ( sum_{n <= x, n = a (q), (n, P_Omega) = 1} 1/n
                                       - delta_Omega * log(x) / q )

Closed forms (character sum over L(1, chi), the Diamond-Ford formula, the
a = q formula) live next to a direct-summation oracle that evaluates the
limit itself, and ``verify_identity`` plays the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterable

import mpmath
from sympy import isprime, primefactors

from .arith import BigReal, PrecisionContext, const_gamma, log_natural, mpf_fraction
from .characters import conjugate, enumerate_characters, evaluate, totient
from .errors import (
    ClosedFormUnavailableError,
    DivergenceError,
    DomainError,
    HypothesisError,
    UndefinedConstantError,
)
from .lfunctions import digamma_rational, embed_root, l_one_digamma
from .summation import progression_constant

__all__ = [
    "PrimeSet",
    "EBCKey",
    "PeriodicFunction",
    "IdentityReport",
    "IDENTITIES",
    "gamma_aq",
    "gamma_omega",
    "gamma_omega_aq",
    "gamma_omega_qq",
    "direct_sum_oracle",
    "periodic_dirichlet_sum",
    "periodic_series_oracle",
    "log_weight_sum",
    "verify_identity",
]


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(int(p) for p in self.primes))
        if len(set(ps)) != len(ps):
            raise DomainError(f"repeated prime in {ps}")
        bad = [p for p in ps if not isprime(p)]
        if bad:
            raise DomainError(f"not prime: {', '.join(map(str, bad))}")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """'2,5' -> {2, 5}; '' , '-' or '{}' -> the empty set."""
        text = text.strip().strip("{}")
        if text in ("", "-", "phi"):
            return cls(())
        try:
            primes = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise DomainError(f"cannot parse prime set {text!r}") from None
        return cls(primes)

    @classmethod
    def of_divisors(cls, n: int) -> "PrimeSet":
        return cls(tuple(primefactors(n)))

    @property
    def p_omega(self) -> int:
        return prod(self.primes)

    @property
    def delta_omega(self) -> Fraction:
        return prod((Fraction(p - 1, p) for p in self.primes), start=Fraction(1))

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __str__(self):
        return "{" + ",".join(map(str, self.primes)) + "}"


@dataclass(frozen=True)
class EBCKey:
    omega: PrimeSet
    a: int
    q: int

    def __post_init__(self):
        if self.q < 1 or self.a < 1:
            raise DomainError(f"a and q must be positive, got a={self.a}, q={self.q}")
        object.__setattr__(self, "a", (self.a - 1) % self.q + 1)

    @property
    def coprime_aq(self) -> bool:
        return gcd(self.a, self.q) == 1

    @property
    def coprime_qP(self) -> bool:
        return gcd(self.q, self.omega.p_omega) == 1

    def __str__(self):
        return f"gamma({self.omega},{self.a},{self.q})"


@dataclass(frozen=True)
class PeriodicFunction:
    period: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if self.period < 1 or len(vals) != self.period:
            raise DomainError(f"need exactly {self.period} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def __call__(self, n: int) -> Fraction:
        return self.values[(n - 1) % self.period]

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    @property
    def summable(self) -> bool:
        return self.total == 0


def _require_defined(omega: PrimeSet, q: int):
    if gcd(q, omega.p_omega) != 1:
        raise UndefinedConstantError(
            f"gamma(Omega, a, q) undefined: gcd(q={q}, P_Omega={omega.p_omega}) > 1")


def log_weight_sum(primes: Iterable[int], ctx: PrecisionContext) -> BigReal:
    """sum of log(p)/(p-1) over ``primes``."""
    with ctx.activate():
        total = mpmath.mpf(0)
        for p in primes:
            total += log_natural(p, ctx).value / (p - 1)
    return BigReal(total, ctx)


def gamma_aq(a: int, q: int, ctx: PrecisionContext) -> BigReal:
    """Classical Euler-Briggs constant, -(psi(a/q) + log q)/q."""
    if q < 1 or not 1 <= a <= q:
        raise DomainError(f"gamma_aq needs 1 <= a <= q, got a={a}, q={q}")
    psi = digamma_rational(a, q, ctx)
    return -(psi + log_natural(q, ctx)) / q


def gamma_omega(omega: PrimeSet, ctx: PrecisionContext) -> BigReal:
    """Diamond-Ford: delta_Omega * (gamma + sum_{p in Omega} log p/(p-1))."""
    s = const_gamma(ctx) + log_weight_sum(omega, ctx)
    return s * omega.delta_omega


@lru_cache(maxsize=4096)
def _closed_form(omega: PrimeSet, a: int, q: int, working: int) -> mpmath.mpf:
    ctx = PrecisionContext(max(working - 20, 10), 20)
    with mpmath.workdps(working):
        char_sum = mpmath.mpc(0)
        for chi in enumerate_characters(q)[1:]:
            L = l_one_digamma(chi, ctx).value
            weight = mpmath.mpc(*embed_root(evaluate(conjugate(chi), a)))
            for p in omega:
                weight *= 1 - mpmath.mpc(*embed_root(evaluate(chi, p))) / p
            char_sum += weight * L
        char_sum /= totient(q)
        logs = (const_gamma(ctx).value + log_weight_sum(primefactors(q), ctx).value
                + log_weight_sum(omega, ctx).value)
        return char_sum.real + mpf_fraction(omega.delta_omega / q) * logs


def gamma_omega_aq(key: EBCKey, ctx: PrecisionContext) -> BigReal:
    """gamma(Omega, a, q) by the L(1, chi) closed form.

    Residues with a = 0 mod q go through :func:`gamma_omega_qq`. Residues with
    1 < gcd(a, q) < q have no closed form here; use :func:`direct_sum_oracle`.
    """
    omega, a, q = key.omega, key.a, key.q
    _require_defined(omega, q)
    if q == 1:
        return gamma_omega(omega, ctx)
    if a == q:
        return gamma_omega_qq(omega, q, ctx)
    if not key.coprime_aq:
        raise ClosedFormUnavailableError(
            f"no closed form for {key}: 1 < gcd(a, q) < q; use the oracle route")
    return BigReal(_closed_form(omega, a, q, ctx.working), ctx)


def gamma_omega_qq(omega: PrimeSet, q: int, ctx: PrecisionContext) -> BigReal:
    """gamma(Omega, q, q) = (gamma(Omega) - delta_Omega log q) / q."""
    _require_defined(omega, q)
    return (gamma_omega(omega, ctx) - log_natural(q, ctx) * omega.delta_omega) / q


def direct_sum_oracle(omega: PrimeSet, a: int, q: int, ctx: PrecisionContext) -> BigReal:
    """Evaluate the defining limit directly.

    The summation condition is periodic modulo m = q * P_Omega, so the partial
    sum is taken over complete blocks of length m and the tail is corrected by
    Euler-Maclaurin. ``achieved`` on the result carries the certified digits.
    """
    _require_defined(omega, q)
    if q < 1:
        raise DomainError("q must be positive")
    P = omega.p_omega
    m = q * P
    a %= q
    weights = [(r, 1) for r in range(1, m + 1) if r % q == a and gcd(r, P) == 1]
    ps = progression_constant(weights, m, ctx.digits, working=ctx.working)
    return BigReal(ps.value, ctx, min(ctx.digits, ps.achieved_digits))


def _gamma_any_residue(omega: PrimeSet, a: int, q: int, ctx: PrecisionContext) -> BigReal:
    if not omega.primes:
        return gamma_aq(a, q, ctx)
    try:
        return gamma_omega_aq(EBCKey(omega, a, q), ctx)
    except ClosedFormUnavailableError:
        return direct_sum_oracle(omega, a, q, ctx)


def _check_gs_hypotheses(f: PeriodicFunction, M: int):
    if M < 1:
        raise DomainError("M must be a natural number")
    if gcd(M, f.period) != 1:
        raise HypothesisError(f"M={M} is not co-prime to the period q={f.period}")
    if not f.summable:
        raise DivergenceError(
            f"sum over (n, M)=1 of f(n)/n diverges: sum_a f(a) = {f.total} != 0")


def periodic_dirichlet_sum(f: PeriodicFunction, M: int, ctx: PrecisionContext) -> BigReal:
    """sum_{(n, M)=1} f(n)/n, evaluated as sum_a f(a) gamma(Omega, a, q).

    Omega is the set of prime divisors of M. The series converges exactly when
    sum_a f(a) = 0; otherwise DivergenceError.
    """
    _check_gs_hypotheses(f, M)
    omega = PrimeSet.of_divisors(M)
    q = f.period
    total = BigReal(mpmath.mpf(0), ctx)
    for a in range(1, q + 1):
        if f(a):
            total = total + _gamma_any_residue(omega, a, q, ctx) * f(a)
    return total


def periodic_series_oracle(f: PeriodicFunction, M: int, ctx: PrecisionContext) -> BigReal:
    """The same sum, by accelerated direct summation of f(n)/n."""
    _check_gs_hypotheses(f, M)
    q = f.period
    rad = prod(primefactors(M))
    m = q * rad
    with ctx.activate():
        weights = [(r, mpf_fraction(f(r))) for r in range(1, m + 1) if gcd(r, M) == 1 and f(r)]
    ps = progression_constant(weights, m, ctx.digits, working=ctx.working)
    return BigReal(ps.value, ctx, min(ctx.digits, ps.achieved_digits))


# -- identity verification --------------------------------------------------------

@dataclass
class IdentityReport:
    name: str
    params: dict
    lhs: BigReal
    rhs: BigReal
    difference: BigReal
    tolerance_exponent: int
    passed: bool
    routes: tuple[str, str] = field(default=("", ""))

    def __bool__(self):
        return self.passed


def _key_from(params) -> tuple[PrimeSet, int, int]:
    omega = params.get("omega", PrimeSet())
    if isinstance(omega, str):
        omega = PrimeSet.parse(omega)
    elif not isinstance(omega, PrimeSet):
        omega = PrimeSet(tuple(omega))
    return omega, int(params.get("a", 1)), int(params.get("q", 1))


def _verify_closed_form(params, ctx):
    omega, a, q = _key_from(params)
    lhs = gamma_omega_aq(EBCKey(omega, a, q), ctx)
    return lhs, direct_sum_oracle(omega, a, q, ctx), ("closed_form", "oracle")


def _verify_diamond_ford(params, ctx):
    omega, _, _ = _key_from(params)
    return gamma_omega(omega, ctx), direct_sum_oracle(omega, 1, 1, ctx), ("diamond_ford", "oracle")


def _verify_qq(params, ctx):
    omega, _, q = _key_from(params)
    return gamma_omega_qq(omega, q, ctx), direct_sum_oracle(omega, q, q, ctx), ("qq_formula", "oracle")


def _verify_gs(params, ctx):
    f = params["f"]
    if not isinstance(f, PeriodicFunction):
        f = PeriodicFunction(len(f), tuple(f))
    M = int(params.get("M", 1))
    return periodic_dirichlet_sum(f, M, ctx), periodic_series_oracle(f, M, ctx), ("identity", "series")


IDENTITIES = {
    "closed_form_vs_oracle": _verify_closed_form,
    "diamond_ford": _verify_diamond_ford,
    "qq_identity": _verify_qq,
    "gs_sum": _verify_gs,
}


def verify_identity(name: str, params: dict, ctx: PrecisionContext) -> IdentityReport:
    """Evaluate both sides of a named identity by independent routes.

    Passes when |lhs - rhs| < 10**-min(30, digits - 10).
    """
    try:
        check = IDENTITIES[name]
    except KeyError:
        raise DomainError(f"unknown identity {name!r}; expected one of {sorted(IDENTITIES)}") from None
    lhs, rhs, routes = check(params, ctx)
    diff = abs(lhs - rhs)
    k = min(30, ctx.digits - 10)
    with ctx.activate():
        passed = bool(diff.value < mpmath.mpf(10) ** (-k))
    return IdentityReport(name, dict(params), lhs, rhs, diff, k, passed, routes)

"""Desk-scale relation probes around generalized Euler-Briggs constants.

None of these prove anything. A ``none_below_height`` answer only says that
no relation of bounded height showed up at the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath
from sympy import Matrix, nextprime, primefactors

from ..arith import BigReal, PrecisionContext, const_gamma
from ..characters import conjugate, enumerate_characters, evaluate, totient
from ..constants import EBCKey, PrimeSet, direct_sum_oracle, gamma_omega_aq, log_weight_sum
from ..errors import CrossCheckError, DomainError, UndefinedConstantError
from ..lfunctions import embed_root, l_one_digamma
from .engine import (
    DISCLAIMER,
    NONE_BELOW_HEIGHT,
    RelationQuery,
    RelationResult,
    find_integer_relation,
    required_precision,
)

__all__ = [
    "DimensionProbeSpec",
    "DimensionReport",
    "StarConstants",
    "gamma_family",
    "probe_gamma_family",
    "probe_algebraic_ratio",
    "compute_star_constants",
    "schanuel_probe",
    "schanuel_prediction",
    "dimension_probe",
]


def _trivial_none(labels, height, precision) -> RelationResult:
    # a single non-zero number admits no non-trivial integer relation
    return RelationResult(NONE_BELOW_HEIGHT, tuple(labels), None, None, (height, precision),
                          None, 0, DISCLAIMER)


def gamma_family(omega: PrimeSet, q: int, ctx: PrecisionContext):
    """Gamma_{Omega,q}: gamma(Omega, v, q) for 1 <= v <= q, (v, q) = 1."""
    if gcd(q, omega.p_omega) != 1:
        raise UndefinedConstantError(f"gcd(q={q}, P_Omega={omega.p_omega}) > 1")
    return [(str(EBCKey(omega, v, q)), gamma_omega_aq(EBCKey(omega, v, q), ctx))
            for v in range(1, q + 1) if gcd(v, q) == 1]


def probe_gamma_family(omega: PrimeSet, q: int, height: int, ctx: PrecisionContext,
                       extra=()) -> RelationResult:
    """Relation search over Gamma_{Omega,q}, optionally with extra entries appended."""
    entries = gamma_family(omega, q, ctx) + list(extra)
    if len(entries) == 1:
        return _trivial_none([entries[0][0]], height, ctx.digits)
    return find_integer_relation(RelationQuery(tuple(entries), height, ctx.digits))


def probe_algebraic_ratio(x: BigReal, y: BigReal, degree: int, height: int,
                          ctx: PrecisionContext) -> RelationResult:
    """Does r = x/y satisfy an integer polynomial of degree <= ``degree``, height <= H?

    Coefficients are reported constant term first: c_0 + c_1 r + ... = 0.
    """
    if degree < 1:
        raise DomainError("degree must be >= 1")
    if y.value == 0:
        raise DomainError("division by zero: y = 0")
    r = x / y
    digits = min(r.digits, ctx.digits)
    with mpmath.workdps(digits + ctx.guard):
        powers = [BigReal(r.value**k, r.ctx) for k in range(degree + 1)]
    labels = ["1", "r"] + [f"r^{k}" for k in range(2, degree + 1)]
    return find_integer_relation(RelationQuery(tuple(zip(labels, powers)), height, digits))


@dataclass
class StarConstants:
    omega: PrimeSet
    a: int
    q: int
    gamma_star: BigReal
    alpha_star: dict          # character label -> (re, im) BigReal pair
    a_n: BigReal
    log_formula: BigReal
    route: str

    @property
    def consistent(self) -> bool:
        with self.a_n.ctx.activate():
            tol = mpmath.mpf(10) ** (-(self.a_n.digits - 5))
            return abs(self.a_n.value - self.log_formula.value) < tol


def compute_star_constants(omega: PrimeSet, a: int, q: int, ctx: PrecisionContext,
                           route: str = "closed_form") -> StarConstants:
    """gamma*, the alpha* weights and A = gamma* - gamma - sum alpha* L(1, chi).

    With ``route='oracle'`` gamma(Omega, a, q) comes from direct summation, so
    the identity A = sum_{p in Omega} log p/(p-1) + sum_{p | q} log p/(p-1)
    is checked against an independent evaluation.
    """
    if gcd(q, omega.p_omega) != 1:
        raise UndefinedConstantError(f"gcd(q={q}, P_Omega={omega.p_omega}) > 1")
    if gcd(a, q) != 1:
        raise DomainError(f"compute_star_constants needs (a, q) = 1, got a={a}, q={q}")
    key = EBCKey(omega, a, q)
    if route == "closed_form":
        g = gamma_omega_aq(key, ctx)
    elif route == "oracle":
        g = direct_sum_oracle(omega, key.a, q, ctx)
    else:
        raise DomainError(f"unknown route {route!r}")
    gamma_star = g * (Fraction(q) / omega.delta_omega)

    scale = Fraction(1) / omega.delta_omega
    for p in primefactors(q):
        scale *= Fraction(p, p - 1)
    alpha = {}
    with ctx.activate():
        total = mpmath.mpc(0)
        for chi in enumerate_characters(q)[1:]:
            w = mpmath.mpc(*embed_root(evaluate(conjugate(chi), key.a)))
            for p in omega:
                w *= 1 - mpmath.mpc(*embed_root(evaluate(chi, p))) / p
            w *= mpmath.mpf(scale.numerator) / scale.denominator
            alpha[chi.label] = (BigReal(w.real, ctx), BigReal(w.imag, ctx))
            total += w * l_one_digamma(chi, ctx).value
        a_val = gamma_star.value - const_gamma(ctx).value - total.real
    a_n = BigReal(a_val, ctx, gamma_star.achieved)
    logs = log_weight_sum(omega, ctx) + log_weight_sum(primefactors(q), ctx)
    star = StarConstants(omega, key.a, q, gamma_star, alpha, a_n, logs, route)
    if not star.consistent:
        raise CrossCheckError(f"A for {key} disagrees with its logarithmic form")
    return star


def schanuel_prediction(families, q: int, augment: bool = False) -> bool:
    """True when the A_n entries of :func:`schanuel_probe` must satisfy a relation.

    Each A_n is sum_{p in Omega_n} S_p + S_q with S_p = log p/(p-1) and S_q the
    q-part. Logs of distinct primes are linearly independent over the
    algebraic numbers, so the entries are dependent exactly when their
    coefficient vectors over {S_p} and S_q are.
    """
    sets = [om if isinstance(om, PrimeSet) else PrimeSet(tuple(om)) for om in families]
    primes = sorted({p for om in sets for p in om})
    shared = int(q > 1)
    rows = [[int(p in om.primes) for p in primes] + [shared] for om in sets]
    if augment and q > 1:
        rows.append([0] * len(primes) + [1])
    return Matrix(rows).rank() < len(rows)


def schanuel_probe(families, q: int, height: int, ctx: PrecisionContext, *, a: int = 1,
                   augment: bool = False) -> RelationResult:
    """Relation search among A_n = gamma*(Omega_n, a, q) - gamma - sum alpha* L(1, chi).

    With ``augment`` (and q > 1) the entry sum_{p | q} log p/(p-1) is appended.
    """
    entries = []
    for om in families:
        om = om if isinstance(om, PrimeSet) else PrimeSet(tuple(om))
        star = compute_star_constants(om, a, q, ctx)
        entries.append((f"A{om}", star.a_n))
    if augment and q > 1:
        entries.append((f"Q{q}", log_weight_sum(primefactors(q), ctx)))
    if any(v.value == 0 for _, v in entries):
        raise DomainError("A_n vanishes (empty Omega with q = 1); not a valid probe entry")
    if len(entries) == 1:
        return _trivial_none([entries[0][0]], height, ctx.digits)
    return find_integer_relation(RelationQuery(tuple(entries), height, ctx.digits))


@dataclass(frozen=True)
class DimensionProbeSpec:
    omega: PrimeSet
    N: int
    d: int = 1

    @property
    def s(self) -> int:
        return len(primefactors(self.d)) if self.d > 1 else 0

    @property
    def t(self) -> int:
        return len(self.omega)

    @property
    def threshold(self) -> Fraction:
        return Fraction(self.N, 2 ** (self.s + self.t + 2))

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("d must be a positive integer")
        if self.N <= 2 ** (self.s + self.t + 2):
            raise DomainError(f"need N > 2^(s+t+2) = {2 ** (self.s + self.t + 2)}, got N={self.N}")


@dataclass
class DimensionReport:
    spec: DimensionProbeSpec
    p: int
    ell: int
    lower_bound: int
    results: tuple[RelationResult, RelationResult]
    digits_used: tuple[int, int]


def _qualifying_primes(spec: DimensionProbeSpec, count: int = 2):
    forbidden = spec.d * spec.omega.p_omega
    p = int(spec.threshold)
    if p == spec.threshold:
        p -= 1
    found = []
    while len(found) < count:
        p = nextprime(p)
        if p > spec.N:
            raise DomainError(f"fewer than {count} qualifying primes in [{spec.threshold}, {spec.N}]")
        if forbidden % p:
            found.append(p)
    return found


def dimension_probe(spec: DimensionProbeSpec, height: int, ctx: PrecisionContext) -> DimensionReport:
    """Pick primes p, l >= N/2^(s+t+2) prime to d P_Omega and probe both families.

    Each family probe runs at max(ctx.digits, 4 log10(H) (prime - 1)) digits,
    so the precision rule of the relation engine is always met.
    """
    p, ell = _qualifying_primes(spec)
    results, used = [], []
    for r in (p, ell):
        digits = max(ctx.digits, required_precision(height, r - 1))
        used.append(digits)
        results.append(probe_gamma_family(spec.omega, r, height, PrecisionContext(digits, ctx.guard)))
    return DimensionReport(spec, p, ell, min(p, ell) - 1, tuple(results), tuple(used))

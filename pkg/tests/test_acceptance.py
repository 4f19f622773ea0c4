"""Acceptance criteria, one marker per criterion.

The terminal summary prints a PASS/FAIL line per criterion (see conftest.py).
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from math import gcd

import mpmath
import pytest

from eulerbriggs import (
    DivergenceError,
    EBCKey,
    PeriodicFunction,
    PrecisionContext,
    PrimeSet,
    const_gamma,
    direct_sum_oracle,
    enumerate_characters,
    evaluate,
    gamma_omega,
    gamma_omega_aq,
    gamma_omega_qq,
    l_one_digamma,
    l_one_series,
    log_natural,
    periodic_dirichlet_sum,
    periodic_series_oracle,
    totient,
)
from eulerbriggs.characters import CyclotomicInteger
from eulerbriggs.relations import (
    DimensionProbeSpec,
    NONE_BELOW_HEIGHT,
    SetFamily,
    dimension_probe,
    find_relation,
    irreducible_family_check,
    probe_algebraic_ratio,
    probe_gamma_family,
    schanuel_probe,
)

CTX50 = PrecisionContext(50)


def below(x, exponent):
    with mpmath.workdps(80):
        return abs(x) < mpmath.mpf(10) ** (-exponent)


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def up_to_sign(c):
    c = tuple(c)
    return {c, tuple(-x for x in c)}


# -- 1 ----------------------------------------------------------------------------------

@pytest.mark.criterion(1, "closed form vs defining limit")
@pytest.mark.parametrize("omega,a,q", [
    ((), 1, 3), ((2,), 1, 3), ((2, 5), 3, 7), ((3,), 1, 4), ((7,), 2, 5),
])
def test_closed_form_matches_defining_limit(omega, a, q):
    om = PrimeSet(omega)
    t0 = time.perf_counter()
    closed = gamma_omega_aq(EBCKey(om, a, q), CTX50)
    oracle = direct_sum_oracle(om, a, q, CTX50)
    elapsed = time.perf_counter() - t0
    assert oracle.digits >= 30
    assert below((closed - oracle).value, 30)
    assert elapsed < 60


# -- 2 ----------------------------------------------------------------------------------

@pytest.mark.criterion(2, "sieved constant vs its logarithmic closed form")
@pytest.mark.parametrize("omega", [(2,), (2, 3), (2, 3, 5)])
def test_sieved_constant(omega):
    om = PrimeSet(omega)
    sieve = direct_sum_oracle(om, 1, 1, CTX50)
    assert below((gamma_omega(om, CTX50) - sieve).value, 30)


# -- 3 ----------------------------------------------------------------------------------

@pytest.mark.criterion(3, "multiples of q: (gamma(Omega) - delta log q)/q")
@pytest.mark.parametrize("omega,q", [((), 2), ((3,), 2), ((2,), 5)])
def test_multiples_of_q(omega, q):
    om = PrimeSet(omega)
    oracle = direct_sum_oracle(om, q, q, CTX50)
    assert below((gamma_omega_qq(om, q, CTX50) - oracle).value, 25)


# -- 4 ----------------------------------------------------------------------------------

def _random_periodic(rng, M, summable):
    periods = [p for p in range(2, 9) if gcd(p, M) == 1]
    q = rng.choice(periods)
    vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(q)]
    if summable:
        vals[-1] -= sum(vals)
    elif sum(vals) == 0:
        vals[0] += 1
    return PeriodicFunction(q, tuple(vals))


SUMMABLE_CASES = [(M, i) for M in (1, 5, 7) for i in range(7)][:20]


@pytest.mark.criterion(4, "periodic sums: convergence iff sum f = 0, value via the constants")
@pytest.mark.parametrize("M,i", SUMMABLE_CASES)
def test_periodic_sum_identity(M, i):
    f = _random_periodic(random.Random(1000 * M + i), M, summable=True)
    via_constants = periodic_dirichlet_sum(f, M, CTX50)
    series = periodic_series_oracle(f, M, CTX50)
    assert below((via_constants - series).value, 25)


@pytest.mark.criterion(4, "periodic sums: convergence iff sum f = 0, value via the constants")
@pytest.mark.parametrize("i", range(5))
def test_periodic_sum_rejects_nonzero_mean(i):
    M = (1, 5, 7)[i % 3]
    f = _random_periodic(random.Random(77 + i), M, summable=False)
    assert f.total != 0
    with pytest.raises(DivergenceError):
        periodic_dirichlet_sum(f, M, CTX50)


# -- 5 ----------------------------------------------------------------------------------

@pytest.mark.criterion(5, "L(1, chi): classical values and digamma vs series")
def test_classical_l_values():
    chi4 = enumerate_characters(4)[1]
    chi3 = enumerate_characters(3)[1]
    with mpmath.workdps(70):
        pi = +mpmath.pi   # independent of the library's own pi
        l4 = l_one_digamma(chi4, CTX50).value
        l3 = l_one_digamma(chi3, CTX50).value
        assert abs(l4 - pi / 4) < mpmath.mpf(10) ** -40
        assert abs(l3 - pi / (3 * mpmath.sqrt(3))) < mpmath.mpf(10) ** -40


@pytest.mark.criterion(5, "L(1, chi): classical values and digamma vs series")
@pytest.mark.parametrize("q", range(3, 31))
def test_l_dual_route(q):
    for chi in enumerate_characters(q)[1:]:
        a = l_one_digamma(chi, CTX50)
        b = l_one_series(chi, CTX50)
        with mpmath.workdps(80):
            assert abs(a.value - b.value) < mpmath.mpf(10) ** -38, chi.label


# -- 6 ----------------------------------------------------------------------------------

@pytest.mark.criterion(6, "exact character orthogonality, q <= 50")
@pytest.mark.parametrize("q", range(1, 51))
def test_orthogonality_exact(q):
    chars = enumerate_characters(q)
    phi = totient(q)
    assert len(chars) == phi
    tables = [[evaluate(chi, n) for n in range(q)] for chi in chars]
    for i, j in itertools.product(range(phi), repeat=2):
        s = CyclotomicInteger.sum_of(x * y.conjugate() for x, y in zip(tables[i], tables[j]))
        assert s.as_integer() == (phi if i == j else 0)
    for m, n in itertools.product(range(q), repeat=2):
        s = CyclotomicInteger.sum_of(t[m] * t[n].conjugate() for t in tables)
        expected = phi if (m == n and gcd(m, q) == 1) else 0
        assert s.as_integer() == expected


# -- 7 ----------------------------------------------------------------------------------

@pytest.mark.criterion(7, "relation-search positive controls")
def test_positive_control_two_classes():
    ctx = PrecisionContext(60)
    g12 = gamma_omega_aq(EBCKey(PrimeSet(), 1, 2), ctx)
    res, dt = timed(find_relation, [g12, const_gamma(ctx), log_natural(2, ctx)], 10, 60)
    assert res.found and res.coefficients in up_to_sign((2, -1, -1))
    assert dt < 10


@pytest.mark.criterion(7, "relation-search positive controls")
def test_positive_control_three_classes():
    ctx = PrecisionContext(60)
    vals = [gamma_omega_aq(EBCKey(PrimeSet(), a, 3), ctx) for a in (1, 2, 3)] + [const_gamma(ctx)]
    res, dt = timed(find_relation, vals, 10, 60)
    assert res.found and res.coefficients in up_to_sign((1, 1, 1, -1))
    assert dt < 10


@pytest.mark.criterion(7, "relation-search positive controls")
def test_positive_control_reducible_family():
    ctx = PrecisionContext(60)
    res, dt = timed(schanuel_probe, [(2,), (3,), (2, 3)], 1, 10, ctx)
    assert res.found and res.coefficients in up_to_sign((1, 1, -1))
    assert dt < 10


# -- 8 ----------------------------------------------------------------------------------

@pytest.mark.criterion(8, "relation-search negative probes")
def test_negative_probe_family_mod_7():
    res, dt = timed(probe_gamma_family, PrimeSet((2,)), 7, 10 ** 8, PrecisionContext(200))
    assert len(res.labels) == 6
    assert res.status == NONE_BELOW_HEIGHT
    assert res.certificate == (10 ** 8, 200)
    assert dt < 600


@pytest.mark.criterion(8, "relation-search negative probes")
def test_negative_probe_algebraic_ratio():
    ctx = PrecisionContext(150)
    x = gamma_omega_aq(EBCKey(PrimeSet((2,)), 1, 5), ctx)
    y = gamma_omega_aq(EBCKey(PrimeSet((3,)), 1, 5), ctx)
    res = probe_algebraic_ratio(x, y, 3, 10 ** 6, ctx)
    assert res.status == NONE_BELOW_HEIGHT


# -- 9 ----------------------------------------------------------------------------------

def _planted(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    while True:
        c = [rng.randint(-1000, 1000) for _ in range(n)]
        if c[-1] != 0 and gcd(*c) == 1:
            break
    with mpmath.workdps(120):
        xs = [mpmath.mpf(rng.getrandbits(380)) / 2 ** 380 + rng.randint(1, 9) for _ in range(n - 1)]
        xs.append(-mpmath.fsum(ci * xi for ci, xi in zip(c, xs)) / c[-1])
    return tuple(c), xs


@pytest.mark.criterion(9, "planted relations recovered at 80 digits")
def test_planted_relations():
    recovered = 0
    misses = []
    for seed in range(100):
        c, xs = _planted(seed)
        res = find_relation(xs, 1000, 80)
        if res.found and res.coefficients in up_to_sign(c):
            recovered += 1
        else:
            misses.append((seed, c, res.coefficients))
    assert recovered == 100, misses[:5]


# -- 10 ---------------------------------------------------------------------------------

def _irreducible_by_definition(sets):
    """The union of any proper subfamily differs from the union of the family."""
    full = frozenset().union(*sets)
    n = len(sets)
    for r in range(n):
        for J in itertools.combinations(range(n), r):
            if frozenset().union(*(sets[j] for j in J)) == full:
                return False
    return True


@pytest.mark.criterion(10, "irreducibility checker vs the proper-subfamily definition")
def test_irreducibility_exhaustive():
    primes = (2, 3, 5, 7)
    subsets = [frozenset(s) for r in range(len(primes) + 1)
               for s in itertools.combinations(primes, r)]
    checked = 0
    for size in range(1, 5):
        for fam in itertools.combinations(subsets, size):
            got = irreducible_family_check(SetFamily(tuple(tuple(sorted(s)) for s in fam)))
            assert got.irreducible == _irreducible_by_definition(fam), fam
            checked += 1
    assert checked == 16 + 120 + 560 + 1820


@pytest.mark.criterion(10, "irreducibility checker vs the proper-subfamily definition")
def test_irreducibility_worked_examples():
    singletons = SetFamily(tuple((p,) for p in (2, 3, 5, 7, 11, 13, 17, 19)))
    assert irreducible_family_check(singletons).irreducible
    nested = SetFamily(((2,), (3,), (2, 3), (5,), (2, 3, 5)))
    res = irreducible_family_check(nested)
    assert not res.irreducible
    # it still contains an irreducible subfamily
    assert irreducible_family_check(SetFamily(((2,), (3,), (5,)))).irreducible


# -- 11 ---------------------------------------------------------------------------------

@pytest.mark.criterion(11, "dimension probe for Omega = {2}, N = 100")
def test_dimension_probe():
    rep = dimension_probe(DimensionProbeSpec(PrimeSet((2,)), 100, 1), 10 ** 6, PrecisionContext(50))
    for r in (rep.p, rep.ell):
        assert r >= 13 and gcd(r, 2) == 1
    assert rep.lower_bound >= 12
    assert any(res.status == NONE_BELOW_HEIGHT for res in rep.results)

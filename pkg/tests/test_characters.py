import cmath
import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from eulerbriggs.characters import (
    ONE,
    ZERO,
    CyclotomicInteger,
    RootOfUnity,
    conjugate,
    enumerate_characters,
    evaluate,
    parity,
    residue_group,
    totient,
)


def sieve_totients(n):
    phi = list(range(n + 1))
    for p in range(2, n + 1):
        if phi[p] == p:
            for k in range(p, n + 1, p):
                phi[k] -= phi[k] // p
    return phi


def test_totient_matches_sieve():
    phi = sieve_totients(200)
    for q in range(1, 201):
        assert totient(q) == phi[q] == sum(1 for a in range(1, q + 1) if gcd(a, q) == 1)


@pytest.mark.parametrize("q", range(1, 201, 7))
def test_character_count(q):
    assert len(enumerate_characters(q)) == totient(q)


@pytest.mark.parametrize("q", [1, 2, 3, 4, 8, 9, 12, 15, 16, 24, 45])
def test_characters_are_distinct_homomorphisms(q):
    chars = enumerate_characters(q)
    tables = set()
    for chi in chars:
        row = tuple(evaluate(chi, n) for n in range(q))
        tables.add(row)
        for m, n in itertools.product(range(q), repeat=2):
            assert evaluate(chi, m * n) == evaluate(chi, m) * evaluate(chi, n)
        for n in range(q):
            assert evaluate(chi, n).zero == (gcd(n, q) != 1)
            assert evaluate(chi, n + 5 * q) == evaluate(chi, n)
    assert len(tables) == len(chars)


def test_principal_first():
    for q in range(1, 40):
        chi0 = enumerate_characters(q)[0]
        assert chi0.principal
        assert all(evaluate(chi0, n).is_one() for n in range(1, q + 1) if gcd(n, q) == 1)


def test_small_moduli_tables():
    chi4 = enumerate_characters(4)[1]
    assert [str(evaluate(chi4, n)) for n in range(1, 5)] == ["1", "0", "-1", "0"]
    chi3 = enumerate_characters(3)[1]
    assert [str(chi3(n)) for n in range(1, 4)] == ["1", "-1", "0"]
    assert parity(chi4) == "odd" and chi4.is_real


@pytest.mark.parametrize("q", [5, 7, 8, 16, 21, 40])
def test_conjugate_is_inverse(q):
    for chi in enumerate_characters(q):
        bar = conjugate(chi)
        for n in range(1, q + 1):
            if gcd(n, q) == 1:
                assert (evaluate(chi, n) * evaluate(bar, n)).is_one()
        assert bar.parity == chi.parity


@pytest.mark.parametrize("q", [3, 5, 8, 12, 20, 33])
def test_parity_counts(q):
    # for q > 2 exactly half the characters are even
    chars = enumerate_characters(q)
    assert sum(c.parity == "even" for c in chars) == len(chars) // 2


@pytest.mark.parametrize("q", [2, 4, 8, 9, 25, 27, 32, 49, 98])
def test_generators_have_stated_orders(q):
    g = residue_group(q)
    assert g.order == totient(q)
    seen = set()
    for exps in itertools.product(*(range(m) for m in g.orders)):
        n = 1
        for gen, e in zip(g.generators, exps):
            n = n * pow(gen, e, q) % q
        seen.add(n)
    assert len(seen) == totient(q)


def test_root_of_unity_formatting():
    assert str(ONE) == "1" and str(ZERO) == "0"
    assert str(RootOfUnity(Fraction(1, 2))) == "-1"
    assert str(RootOfUnity(Fraction(1, 4))) == "e(1/4)"


@settings(max_examples=60, deadline=None)
@given(q=st.integers(1, 120), m=st.integers(-500, 500), n=st.integers(-500, 500))
def test_multiplicative_and_numerically_unimodular(q, m, n):
    for chi in enumerate_characters(q)[:6]:
        assert evaluate(chi, m * n) == evaluate(chi, m) * evaluate(chi, n)
        z = evaluate(chi, m).to_complex()
        assert abs(z) == pytest.approx(0.0 if gcd(m, q) != 1 else 1.0)
        if gcd(m, q) == 1:
            assert z ** chi.order == pytest.approx(1.0)


def test_cyclotomic_zero_detection():
    roots = [RootOfUnity(Fraction(k, 6)) for k in range(6)]
    assert CyclotomicInteger.sum_of(roots).is_zero()
    assert CyclotomicInteger.sum_of(roots[:5]).as_integer() is None
    assert CyclotomicInteger.sum_of([ONE, ONE, ZERO]).as_integer() == 2
    # 1 + e(1/3) + e(2/3) = 0, checked numerically too
    third = [RootOfUnity(Fraction(k, 3)) for k in range(3)]
    assert CyclotomicInteger.sum_of(third).is_zero()
    assert abs(sum(r.to_complex() for r in third)) < 1e-12
    assert cmath.isclose(roots[1].to_complex(), cmath.exp(1j * cmath.pi / 3))

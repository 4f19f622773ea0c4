import mpmath
import pytest

from eulerbriggs import PrecisionContext
from eulerbriggs.characters import conjugate, enumerate_characters
from eulerbriggs.errors import DomainError
from eulerbriggs.lfunctions import digamma_rational, l_one_digamma, l_one_series

CTX = PrecisionContext(40)


def class_number(d):
    """h(d) for a negative discriminant d, by counting reduced forms."""
    h = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a:
                continue
            if b < 0 and (a == c):
                continue
            h += 1
        a += 1
    return h


def quadratic_character(p):
    """The unique real non-principal character mod an odd prime p."""
    real = [c for c in enumerate_characters(p)[1:] if c.is_real]
    assert len(real) == 1
    return real[0]


@pytest.mark.parametrize("a,q", [(1, 1), (1, 2), (1, 3), (2, 3), (3, 7), (5, 12), (11, 30), (29, 30)])
def test_digamma_against_mpmath(a, q):
    with mpmath.workdps(CTX.working):
        expected = mpmath.digamma(mpmath.mpf(a) / q)
    assert abs(digamma_rational(a, q, CTX).value - expected) < mpmath.mpf(10) ** -38


@pytest.mark.parametrize("a,q", [(0, 3), (4, 3), (-1, 5)])
def test_digamma_domain(a, q):
    with pytest.raises(DomainError):
        digamma_rational(a, q, CTX)


@pytest.mark.parametrize("p", [7, 11, 19, 23, 31, 43, 47, 59])
def test_class_number_formula(p):
    # p = 3 mod 4: L(1, (./p)) = pi h(-p) / sqrt(p)
    lv = l_one_digamma(quadratic_character(p), CTX)
    with mpmath.workdps(60):
        expected = mpmath.pi * class_number(-p) / mpmath.sqrt(p)
        assert abs(lv.value - expected) < mpmath.mpf(10) ** -38


FUNDAMENTAL_UNITS = {5: (1, 1, 2), 13: (3, 1, 2), 17: (4, 1, 1), 29: (5, 1, 2)}  # (u + v sqrt p)/w


@pytest.mark.parametrize("p", sorted(FUNDAMENTAL_UNITS))
def test_real_even_character_value(p):
    # p = 1 mod 4 with h(p) = 1: L(1, (./p)) = 2 log(eps) / sqrt(p)
    lv = l_one_digamma(quadratic_character(p), CTX)
    u, v, w = FUNDAMENTAL_UNITS[p]
    with mpmath.workdps(60):
        eps = (u + v * mpmath.sqrt(p)) / w
        assert abs(lv.value - 2 * mpmath.log(eps) / mpmath.sqrt(p)) < mpmath.mpf(10) ** -38


def test_principal_character_diverges():
    chi0 = enumerate_characters(7)[0]
    with pytest.raises(DomainError, match="divergent"):
        l_one_digamma(chi0, CTX)
    with pytest.raises(DomainError):
        l_one_series(chi0, CTX)


@pytest.mark.parametrize("q", [5, 7, 13, 16, 21])
def test_conjugate_characters_give_conjugate_values(q):
    for chi in enumerate_characters(q)[1:]:
        a = l_one_digamma(chi, CTX).value
        b = l_one_digamma(conjugate(chi), CTX).value
        with mpmath.workdps(60):
            assert abs(a - mpmath.conj(b)) < mpmath.mpf(10) ** -38
        if chi.is_real:
            assert l_one_digamma(chi, CTX).imag_part.value == 0


def test_lvalue_keeps_full_precision():
    chi = enumerate_characters(4)[1]
    lv = l_one_digamma(chi, PrecisionContext(200))
    with mpmath.workdps(230):
        assert abs(lv.value - mpmath.pi / 4) < mpmath.mpf(10) ** -198

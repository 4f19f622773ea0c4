import mpmath
import pytest

from eulerbriggs.summation import progression_constant


def close(a, b, digits):
    with mpmath.workdps(digits + 30):
        return abs(a - b) < mpmath.mpf(10) ** (-digits)


@pytest.mark.parametrize("digits", [20, 60, 200])
def test_harmonic_constant(digits):
    ps = progression_constant([(1, 1)], 1, digits)
    with mpmath.workdps(digits + 30):
        assert close(ps.value, +mpmath.euler, digits)
    assert ps.achieved_digits >= digits


def test_odd_harmonic_constant():
    # sum_{n odd <= x} 1/n - (log x)/2 -> (gamma + log 2)/2
    ps = progression_constant([(1, 1)], 2, 50)
    with mpmath.workdps(80):
        assert close(ps.value, (mpmath.euler + mpmath.log(2)) / 2, 50)


def test_leibniz_series():
    ps = progression_constant([(1, 1), (3, -1)], 4, 60)
    with mpmath.workdps(90):
        assert close(ps.value, mpmath.pi / 4, 60)


def test_error_bound_is_honest():
    for digits in (15, 25, 40):
        ps = progression_constant([(1, 1), (2, -3), (3, 2)], 3, digits)
        with mpmath.workdps(120):
            exact = (mpmath.digamma(1 / mpmath.mpf(3)) * -1 + 3 * mpmath.digamma(2 / mpmath.mpf(3))
                     - 2 * mpmath.digamma(1)) / 3
            assert abs(ps.value - exact) <= ps.error_bound + mpmath.mpf(10) ** -(digits + 5)


def test_mean_term_uses_total_weight():
    # weights with W != 0 subtract (W/m) log(Km); compare against digamma
    ps = progression_constant([(2, 1)], 5, 40)
    with mpmath.workdps(80):
        exact = -(mpmath.digamma(mpmath.mpf(2) / 5) + mpmath.log(5)) / 5
        assert close(ps.value, exact, 40)

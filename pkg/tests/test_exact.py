import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from hartogs_bergman.exact import (
    DivergentIntegralError,
    InexactValueError,
    PiMultiple,
    Profile,
    rational_power,
)


def test_pi_multiple_arithmetic():
    a = PiMultiple(Fraction(1, 2), 2)
    b = PiMultiple(Fraction(1, 3), 2)
    assert a + b == PiMultiple(Fraction(5, 6), 2)
    assert a * b == PiMultiple(Fraction(1, 6), 4)
    assert (a / b) == PiMultiple(Fraction(3, 2), 0)
    assert a - a == 0
    assert math.isclose(float(a), math.pi**2 / 2)


def test_pi_multiple_rejects_mixed_powers():
    with pytest.raises(ValueError):
        PiMultiple(Fraction(1), 1) + PiMultiple(Fraction(1), 2)


@pytest.mark.parametrize(
    "base, exponent, expected",
    [
        (Fraction(1, 4), Fraction(1, 2), Fraction(1, 2)),
        (Fraction(8, 27), Fraction(2, 3), Fraction(4, 9)),
        (Fraction(2), Fraction(-3), Fraction(1, 8)),
        (Fraction(0), Fraction(5, 2), Fraction(0)),
    ],
)
def test_rational_power(base, exponent, expected):
    assert rational_power(base, exponent) == expected


def test_rational_power_irrational_raises():
    with pytest.raises(InexactValueError):
        rational_power(Fraction(2), Fraction(1, 2))


# oracle values: 2 * int chi(r) r^3 dr by hand
@pytest.mark.parametrize(
    "profile, expected",
    [
        (Profile.one(), Fraction(1, 4)),
        (Profile.step(Fraction(1, 2), 1), Fraction(15, 64)),
        (Profile.smoothstep(Fraction(1, 4), Fraction(1, 2)), Fraction(8759, 35840)),
    ],
)
def test_profile_integrals_frozen(profile, expected):
    assert profile.integrate_power(3) == expected
    num, _ = quad(lambda r: profile(np.array(r)) * r**3, 0, 1, points=[0.25, 0.5], epsabs=1e-14)
    assert math.isclose(num, float(expected), rel_tol=1e-12)


def test_smoothstep_is_c1_ramp():
    chi = Profile.smoothstep()
    r = np.array([0.2, 0.25, 0.375, 0.5, 0.9])
    np.testing.assert_allclose(chi(r), [0, 0, 0.5, 1, 1], atol=1e-15)


def test_profile_divergence_detected():
    with pytest.raises(DivergentIntegralError):
        Profile.one().integrate_power(-1)
    # cutoff away from 0 makes any power integrable
    assert Profile.step().integrate_power(-5) == Fraction(15, 4)


@given(st.integers(0, 6), st.integers(0, 6))
def test_profile_product_integrates_like_pointwise_product(i, j):
    a = Profile.smoothstep()
    b = Profile.step(Fraction(1, 3), Fraction(3, 4))
    prod = a * b
    num, _ = quad(lambda r: a(np.array(r)) * b(np.array(r)) * r ** (i + j), 0, 1, points=[1 / 4, 1 / 3, 1 / 2, 3 / 4])
    assert math.isclose(float(prod.integrate_power(i + j)), num, rel_tol=1e-10, abs_tol=1e-14)

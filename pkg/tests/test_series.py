from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hartogs_bergman.geometry import Domain, Point2C
from hartogs_bergman.series import (
    DD_TO_H,
    H_TO_DD,
    CoeffSeries,
    DivergentSequenceError,
    IndexConstraintError,
    MultiplierSeq,
    UnsupportedDomainError,
    apply_multiplier,
    bell_transform,
    bv_norm,
    dumps,
    eval_series,
    index_allowed,
    loads,
    partial_sum,
)

H = Domain.HARTOGS
DD = Domain.PUNCTURED_BIDISC


@pytest.mark.parametrize(
    "domain, idx, ok",
    [
        (H, (-1, 0), True),
        (H, (-2, 0), False),
        (H, (-3, 2), True),
        (H, (-4, 2), False),
        (DD, (-1, 0), False),
        (DD, (0, 3), True),
        (Domain.DISC, (2, 1), False),
    ],
)
def test_index_allowed(domain, idx, ok):
    assert index_allowed(domain, idx) is ok


def test_constructor_rejects_bad_index():
    with pytest.raises(IndexConstraintError):
        CoeffSeries(H, {(-2, 0): 1})


def test_zero_coefficients_dropped_and_exact():
    s = CoeffSeries(H, {(0, 0): 0, (1, 1): Fraction(1, 3)})
    assert s.support() == [(1, 1)]
    assert s.exact


def test_evaluate_matches_pointwise():
    s = CoeffSeries(H, {(-1, 0): 2, (0, 1): Fraction(1, 2)})
    z = Point2C(0.5, 0.3, 0.2, 1.1)
    expected = 2 / z.z1 + 0.5 * z.z2
    assert abs(eval_series(s, z) - expected) < 1e-14


def test_partial_sum():
    s = CoeffSeries(DD, {(k, 0): Fraction(1, k) for k in range(1, 10)})
    assert partial_sum(s, 4).support() == [(1, 0), (2, 0), (3, 0), (4, 0)]
    with pytest.raises(UnsupportedDomainError):
        partial_sum(CoeffSeries(H, {(0, 0): 1}), 3)


def test_right_inverse_multiplier_values():
    t = MultiplierSeq.right_inverse()
    assert t(0) == 2
    assert t(64) == Fraction(66, 65)


def test_bv_norm_monotone_exact():
    # sum 1/((mu+1)(mu+2)) telescopes to 1
    res = bv_norm(MultiplierSeq.right_inverse(), 100)
    assert res.certified
    assert res.partial == Fraction(100, 101)
    assert res.bound == 1
    assert res.limit == 1
    assert bv_norm(MultiplierSeq.constant(5), 10).bound == 0


def test_bv_norm_rejects_alternating():
    alt = MultiplierSeq(lambda mu: (-1) ** mu, name="alt")
    with pytest.raises(DivergentSequenceError):
        bv_norm(alt, 200)


def test_apply_multiplier():
    s = CoeffSeries(DD, {(0, 0): 1, (3, 2): 4})
    out = apply_multiplier(s, MultiplierSeq.right_inverse())
    assert out[(0, 0)] == 2
    assert out[(3, 2)] == 4 * Fraction(5, 4)


@given(st.integers(0, 6), st.integers(-7, 8))
def test_bell_index_roundtrip(n, m):
    if m < -(n + 1):
        return
    s = CoeffSeries(H, {(m, n): Fraction(3, 7)})
    img = bell_transform(s, H_TO_DD)
    assert img.support() == [(m + n + 1, n)]
    assert bell_transform(img, DD_TO_H) == s


def test_bell_transform_matches_pullback():
    s = CoeffSeries(H, {(-1, 0): 1, (2, 3): Fraction(1, 5)})
    w1, w2 = 0.6 * np.exp(0.4j), 0.7 * np.exp(2.1j)
    # det(Phi') * f(Phi(w)) with Phi(w) = (w1, w1 w2)
    direct = w1 * s(w1, w1 * w2)
    assert abs(bell_transform(s)(w1, w2) - direct) < 1e-14


def test_text_roundtrip():
    s = CoeffSeries(H, {(-1, 0): Fraction(15, 32), (2, 1): 0.25 + 1e-3j})
    assert loads(dumps(s)) == s

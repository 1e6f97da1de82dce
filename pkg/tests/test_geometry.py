import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hartogs_bergman.geometry import (
    Domain,
    Point2C,
    SingularEvaluationError,
    WeightSpec,
    contains,
    delta1,
    phi,
    phi_inverse,
    phi_jacobian_det,
    weight_at,
)


def test_angles_wrapped():
    z = Point2C(0.5, -math.pi / 2)
    assert 0 <= z.t1 < 2 * math.pi
    assert cmath.isclose(z.z1, -0.5j)


@pytest.mark.parametrize(
    "point, domain, inside",
    [
        (Point2C(0.5, 0, 0.25, 1), Domain.HARTOGS, True),
        (Point2C(0.5, 0, 0.5, 1), Domain.HARTOGS, False),
        (Point2C(0.0, 0, 0.0, 0), Domain.HARTOGS, False),
        (Point2C(0.0, 0, 0.3, 0), Domain.BIDISC, True),
        (Point2C(0.0, 0, 0.3, 0), Domain.PUNCTURED_BIDISC, False),
        (Point2C(0.0, 0), Domain.DISC, True),
        (Point2C(0.0, 0), Domain.PUNCTURED_DISC, False),
        (Point2C(1.0, 0), Domain.DISC, False),
    ],
)
def test_contains(point, domain, inside):
    assert contains(domain, point) is inside


def test_contains_dimension_mismatch():
    with pytest.raises(ValueError):
        contains(Domain.DISC, Point2C(0.1, 0, 0.05, 0))


def test_delta1_and_weights():
    z = Point2C(0.5, 1.0, 0.2, 2.0)
    assert delta1(z) == 0.5
    assert math.isclose(weight_at(WeightSpec.power(-2), z), 4.0)
    assert weight_at(WeightSpec.constant(3), z) == 3
    with pytest.raises(SingularEvaluationError):
        weight_at(WeightSpec.power(-1), Point2C(0.0, 0, 0.0, 0))


@given(
    st.floats(0.01, 0.99),
    st.floats(0, 2 * math.pi, exclude_max=True),
    st.floats(0.0, 0.99),
    st.floats(0, 2 * math.pi, exclude_max=True),
)
def test_phi_roundtrip(r1, t1, s, t2):
    w = Point2C(r1, t1, s, t2)
    z = phi(w)
    assert contains(Domain.HARTOGS, z)
    back = phi_inverse(z)
    assert cmath.isclose(back.z1, w.z1, abs_tol=1e-12)
    assert cmath.isclose(back.z2, w.z2, abs_tol=1e-12)
    assert cmath.isclose(phi_jacobian_det(w), w.z1)


def test_phi_inverse_singular():
    with pytest.raises(SingularEvaluationError):
        phi_inverse(Point2C(0.0, 0, 0.0, 0))


def test_domain_parse_aliases():
    assert Domain.parse("hartogs") is Domain.HARTOGS
    assert Domain.parse("dd") is Domain.PUNCTURED_BIDISC
    with pytest.raises(ValueError):
        Domain.parse("annulus")

"""Bergman projections on the Hartogs triangle.

Exact and numerical tools for weighted ``L^p`` norms, monomial bases and
Bergman projections on the Hartogs triangle ``{|z2| < |z1| < 1}``, the
(punctured) disc and the (punctured) bidisc, plus a scenario harness that
checks the mapping properties of the projection.
"""

from .exact import DivergentIntegralError, InexactValueError, PiMultiple, Profile
from .geometry import (
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
from .series import (
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
    eval_series,
    index_allowed,
    partial_sum,
)
from .quadrature import (
    IntegrationResult,
    MonomialExpr,
    MonomialTerm,
    QuadratureSpec,
    Verdict,
    inner_product,
    integrate_exact,
    integrate_numeric,
    lp_norm,
)
from .bergman import (
    ProjectionSpec,
    basis_element,
    counterexample_constant,
    counterexample_function,
    kernel,
    kernel_series,
    monomial_norm_sq,
    project,
    project_with_certificate,
    right_inverse_U,
)

__version__ = "0.1.0"

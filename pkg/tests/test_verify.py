import json
import math
from fractions import Fraction

import numpy as np
import pytest

from hartogs_bergman.geometry import Domain
from hartogs_bergman.quadrature import lp_norm
from hartogs_bergman.series import H_TO_DD, CoeffSeries, bell_transform
from hartogs_bergman.verify import (
    FAIL,
    MEASURED,
    PASS,
    SCENARIOS,
    conjugate_exponent,
    disc_polynomial_norms,
    estimate_operator_norm,
    jsonable,
    random_hartogs_function,
    run_scenario,
    verify_bell_isometry,
    verify_counterexample,
    verify_duality_chain,
    verify_norm_equivalence,
    verify_right_inverse,
    verify_tmu,
)

H = Domain.HARTOGS


def test_conjugate_exponent():
    assert conjugate_exponent(Fraction(4, 3)) == 4
    assert conjugate_exponent(Fraction(6, 5)) == 6
    with pytest.raises(ValueError):
        conjugate_exponent(1)


def test_scenarios_have_claims_and_defaults():
    for sid, sc in SCENARIOS.items():
        assert sc.id == sid and sc.claim


def test_small_tmu_and_right_inverse():
    assert verify_tmu(mu_max=8).verdict == PASS
    assert verify_right_inverse(degree=4, trials=3, seed=1).verdict == PASS


def test_right_inverse_degree_limit():
    with pytest.raises(ValueError):
        verify_right_inverse(degree=65)


def test_counterexample_rejects_large_p():
    with pytest.raises(ValueError):
        verify_counterexample(p=Fraction(3, 2))


def test_counterexample_power_divergence_at_q6():
    rep = verify_counterexample(p=Fraction(6, 5), box=4)
    assert rep.verdict == PASS
    assert math.isclose(rep.computed["divergence"]["power_exponent"], 2.0, rel_tol=0.02)


def test_counterexample_weighted_lambda():
    rep = verify_counterexample(p=Fraction(4, 3), lambda_power=4, chi="smooth", box=4)
    assert rep.verdict == PASS
    assert rep.computed["C"] == Fraction(8759, 17920)
    assert math.isfinite(rep.computed["Lq_weighted_norm"])


def test_random_hartogs_functions_are_zero_free():
    rng = np.random.default_rng(0)
    for _ in range(20):
        f = random_hartogs_function(rng)
        tail = sum(abs(v) for k, v in f.coeffs.items() if k != (-1, 0))
        assert f[(-1, 0)] == 1 and tail <= Fraction(1, 2)


def test_bell_isometry_single_pair_and_known_values():
    rep = verify_bell_isometry(p=2, alpha=0, trials=1)
    assert rep.verdict == PASS
    # f = 1: ||1||_{L^2(H)} = (pi^2/2)^(1/2)
    one = lp_norm(bell_transform(CoeffSeries(H, {(0, 0): 1}), H_TO_DD), 2, Domain.PUNCTURED_BIDISC)
    assert math.isclose(one.value, math.sqrt(math.pi**2 / 2), rel_tol=1e-12)


def test_operator_norm_counterexample_diverges_unweighted():
    rep = estimate_operator_norm(p=4, weight_power=0, family=2, seed=3)
    assert "counterexample" in rep.computed["diverged_members"]
    assert rep.verdict == MEASURED


def test_operator_norm_p2_contraction():
    rep = estimate_operator_norm(p=2, weight_power=0, family=5)
    assert rep.computed["max_ratio"] <= 1 + 1e-8


def test_duality_small():
    rep = verify_duality_chain(p=3, samples=2)
    assert rep.verdict == PASS


def test_norm_equivalence():
    rep = verify_norm_equivalence(p=3, alpha=-1, nu_max=8)
    assert rep.verdict == PASS
    assert math.isclose(rep.computed["weight_integral_numeric"], 2 * math.pi, rel_tol=1e-8)


def test_norm_equivalence_alpha_zero_identical():
    rep = verify_norm_equivalence(p=2, alpha=0, nu_max=4)
    ratios = [m.value for m in rep.measurements if m.quantity == "disc_ratio"]
    assert all(r == 1.0 for r in ratios)


def test_norm_equivalence_rejects_nonintegrable_weight():
    with pytest.raises(ValueError, match="not integrable"):
        verify_norm_equivalence(p=2, alpha=-2)


def test_disc_polynomial_norms_parseval():
    c = np.array([0, 1, 0.5, 0.25], complex)
    total, rows = disc_polynomial_norms(c, 2.0, [1, 3])
    parseval = math.sqrt(math.pi * sum(abs(x) ** 2 / (k + 1) for k, x in enumerate(c)))
    assert math.isclose(total, parseval, rel_tol=1e-13)
    assert math.isclose(rows[-1][1], total, rel_tol=1e-13)
    assert rows[-1][2] == 0


def test_reports_are_json_serialisable():
    rep = run_scenario("tmu", mu_max=3)
    text = json.dumps(rep.to_dict(), sort_keys=True, allow_nan=False)
    assert '"verdict": "Pass"' in text
    assert rep.to_dict()["runtime_s"] is None


def test_jsonable_forms():
    assert jsonable(Fraction(3, 4)) == "3/4"
    assert jsonable(Fraction(4)) == 4
    assert jsonable(float("inf")) == "inf"
    assert jsonable(np.float64(0.5)) == 0.5


@pytest.mark.parametrize("p", [2, 3, 5])
def test_bell_transform_of_inv_z1_is_constant(p):
    # T_Phi(1/z1) = 1, so both sides equal ||1||_{L^p(D* x D)} = pi^(2/p)
    from hartogs_bergman.geometry import WeightSpec

    inv = CoeffSeries(H, {(-1, 0): 1})
    assert bell_transform(inv, H_TO_DD) == CoeffSeries(Domain.PUNCTURED_BIDISC, {(0, 0): 1})
    right = lp_norm(inv, p, H, WeightSpec.power(p - 2), exact=False)
    assert math.isclose(right.value, math.pi ** (2 / p), rel_tol=1e-9)

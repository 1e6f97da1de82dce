"""Acceptance criteria, one test each (criterion 5 is split in two).

Run alone with ``pytest tests/test_acceptance.py -v``; a pass/fail line per
criterion is printed in the terminal summary.  ``python tests/test_acceptance.py``
prints the same lines without pytest.
"""

import math
import sys
from fractions import Fraction

from hartogs_bergman import cli
from hartogs_bergman.exact import PiMultiple
from hartogs_bergman.verify import (
    DEFAULT_SEED,
    FAIL,
    MEASURED,
    PASS,
    STATED_WEIGHTED_VALUE,
    estimate_partial_sum_constant,
    verify_bell_isometry,
    verify_contraction,
    verify_counterexample,
    verify_divergence,
    verify_orthogonality,
    verify_right_inverse,
    verify_tmu,
    verify_weighted_norm,
)

PI2 = math.pi**2


def _line(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")


def test_criterion_01_tmu_identity():
    rep = verify_tmu(mu_max=64)
    ok = rep.verdict == PASS and rep.computed["mismatches"] == 0 and rep.runtime_s < 1.0
    _line(1, ok, f"pairs={rep.computed['pairs_checked']} runtime={rep.runtime_s:.3f}s")
    assert rep.computed["pairs_checked"] == 65 * 65
    assert rep.verdict == PASS
    assert rep.runtime_s < 1.0


def test_criterion_02_right_inverse():
    rep = verify_right_inverse(degree=20, trials=50, seed=DEFAULT_SEED)
    ok = rep.verdict == PASS and rep.runtime_s < 5.0
    _line(2, ok, f"functions={rep.computed['functions']} runtime={rep.runtime_s:.2f}s")
    assert rep.verdict == PASS
    assert rep.runtime_s < 5.0


def test_criterion_03_counterexample_structure():
    rep = verify_counterexample(p=Fraction(4, 3), chi="step", box=16, tol=1e-8)
    c = rep.computed
    ok = (
        rep.verdict == PASS
        and c["C"] == Fraction(15, 32)
        and c["projection_support"] == [(-1, 0)]
        and c["numeric_max_coefficient_error"] <= 1e-8
    )
    _line(3, ok, f"C={c['C']} numeric_err={c['numeric_max_coefficient_error']:.1e}")
    assert c["C"] == Fraction(15, 32)
    assert c["projection_support"] == [(-1, 0)]
    assert c["projection_complete"]
    assert c["numeric_max_coefficient_error"] <= 1e-8
    assert rep.verdict == PASS


def test_criterion_04_divergence():
    rep = verify_divergence(q=4, q_converging=Fraction(7, 2))
    slope = rep.computed["log_slope"]
    conv = rep.computed["converging_value"]
    ok = (
        abs(slope - 2 * PI2) <= 0.02 * 2 * PI2
        and abs(conv - 4 * PI2) <= 1e-6 * 4 * PI2
        and rep.runtime_s < 10.0
    )
    _line(4, ok, f"slope={slope:.10g} q=3.5 value={conv:.15g} runtime={rep.runtime_s:.2f}s")
    assert abs(slope - 2 * PI2) <= 0.02 * 2 * PI2
    assert abs(conv - 4 * PI2) <= 1e-6 * 4 * PI2
    assert rep.runtime_s < 10.0


def test_criterion_05a_weighted_norm_derived_value_and_flag():
    rep = verify_weighted_norm(p_values=(2, 3, 4, 6), tol=1e-8)
    c = rep.computed
    values = [row["numeric"] for row in c["numeric"]]
    ok = c["derived_value_reproduced"] and c["flag"] in ("agreement", "discrepancy")
    _line("5a", ok, f"derived={float(c['derived_exact']):.15g} numeric={values} flag={c['flag']}")
    assert c["derived_exact"] == PiMultiple(Fraction(1), 2)
    assert all(abs(v - PI2) <= 1e-8 * PI2 for v in values)
    assert c["flag"] == "discrepancy"
    assert any(n.startswith("discrepancy") for n in rep.notes)
    assert rep.claimed["stated_float"] == STATED_WEIGHTED_VALUE


def test_criterion_05b_weighted_norm_stated_value_reproduced():
    # The stated value 2*pi^2 must also be reproduced numerically to 1e-8.
    # The integral equals pi^2, so this check is expected to fail; see the
    # decisions ledger.
    rep = verify_weighted_norm(p_values=(2, 3, 4, 6), tol=1e-8)
    values = [row["numeric"] for row in rep.computed["numeric"]]
    ok = all(abs(v - STATED_WEIGHTED_VALUE) <= 1e-8 * STATED_WEIGHTED_VALUE for v in values)
    _line("5b", ok, f"stated={STATED_WEIGHTED_VALUE:.15g} numeric={values[0]:.15g}")
    assert ok


def test_criterion_06_bell_isometry():
    rep = verify_bell_isometry(cases=((2, 0), (3, 1), (3, "p-2")), trials=10, seed=DEFAULT_SEED, tol=1e-6)
    gap = rep.computed["max_relative_gap"]
    ok = rep.verdict == PASS and gap <= 1e-6 and rep.runtime_s < 30.0
    _line(6, ok, f"max_rel_gap={gap:.2e} runtime={rep.runtime_s:.2f}s")
    assert rep.verdict == PASS
    assert gap <= 1e-6
    assert rep.runtime_s < 30.0


def test_criterion_07_orthogonality():
    rep = verify_orthogonality(box=8)
    ok = rep.verdict == PASS
    _line(7, ok, f"pairs={rep.computed['pairs']}")
    assert rep.computed["nonzero_off_diagonal"] == 0
    assert rep.computed["norm_mismatches"] == 0
    assert rep.verdict == PASS


def test_criterion_08_contraction():
    rep = verify_contraction(samples=100, seed=DEFAULT_SEED)
    slack = rep.computed["min_slack"]
    ok = rep.verdict == PASS and slack >= -1e-10
    _line(8, ok, f"min_slack={slack:.3e} max_ratio={rep.computed['max_ratio']:.6f}")
    assert len([m for m in rep.measurements if m.quantity == "ratio"]) == 100
    assert slack >= -1e-10
    assert rep.verdict == PASS


def test_criterion_09_partial_sums():
    rep = estimate_partial_sum_constant(p_values=(2, 4), n_max=256, terms=256)
    per_p = rep.computed["per_p"]
    ok = rep.verdict == MEASURED and all(v["tail_monotone"] for v in per_p.values())
    sup = {k: v["sup_ratio"] for k, v in per_p.items()}
    _line(9, ok, f"sup_ratio={sup} (Measured)")
    assert rep.verdict == MEASURED
    for v in per_p.values():
        assert v["tail_monotone"]
    assert per_p["2"]["sup_ratio"] <= 1 + 1e-12


def test_criterion_10_determinism(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        config = cli.RunConfig(
            ["tmu", "counterexample", "weighted-norm"],
            overrides={"tol": "1e-8"},
            scenario_overrides={"tmu": {"mu_max": "16"}},
            json_path=str(path),
        )
        cli.run(config)
    a, b = (p.read_bytes() for p in paths)
    ok = a == b
    _line(10, ok, f"bytes={len(a)}")
    assert a == b


if __name__ == "__main__":
    import inspect
    import tempfile
    import pathlib

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion") and callable(fn):
            try:
                if "tmp_path" in inspect.signature(fn).parameters:
                    with tempfile.TemporaryDirectory() as d:
                        fn(pathlib.Path(d))
                else:
                    fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)

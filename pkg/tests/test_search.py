from __future__ import annotations

import math

import numpy as np
import pytest

from hhcert.convexity import (AlphaM, GridSpec, RConvex, check_alpha_m_convex,
                              check_r_convex)
from hhcert.expr import Const, Interval, parse
from hhcert.hh import run_verifier
from hhcert.search import (STRESS_THEOREMS, ScanRow, StressConfig,
                           random_convex_expr, scan_csv, stress, summary_json,
                           summary_to_dict, tightness_scan)

UNIT = Interval(0.0, 1.0)

# ------------------------- config validation -------------------------


def test_stress_config_validation():
    StressConfig(seed=0, trials=1)
    with pytest.raises(ValueError):
        StressConfig(trials=0)
    with pytest.raises(ValueError):
        StressConfig(seed=-1)
    with pytest.raises(ValueError):
        StressConfig(intervals=())
    with pytest.raises(ValueError):
        StressConfig(alpha_pool=(0.5,), m_pool=())      # must come in pairs
    with pytest.raises(ValueError):
        StressConfig(alpha_pool=(), m_pool=(), r_pool=())  # no family at all


def test_params_pool_is_product():
    cfg = StressConfig(alpha_pool=(0.5, 1.0), m_pool=(1.0,), r_pool=(0.0,))
    pool = cfg.params_pool()
    assert AlphaM(0.5, 1.0) in pool
    assert AlphaM(1.0, 1.0) in pool
    assert RConvex(0.0) in pool
    assert len(pool) == 3


# ------------------------- generator -------------------------


def test_generator_deterministic():
    draw = lambda: random_convex_expr(np.random.default_rng(42),
                                      AlphaM(1.0, 1.0), UNIT)
    assert draw() == draw()


def test_generator_output_recertifies():
    grid = GridSpec(17, 33)
    for seed in range(8):
        rng = np.random.default_rng(seed)
        e = random_convex_expr(rng, AlphaM(1.0, 1.0), UNIT, grid=grid)
        assert e is not None
        assert check_alpha_m_convex(e, UNIT, 1.0, 1.0, grid).passed


def test_generator_rejects_out_of_class_atoms():
    # pure linear atoms never satisfy the (0.5, 1) class, so every draw
    # is rejected and the generator gives up
    rng = np.random.default_rng(0)
    e = random_convex_expr(rng, AlphaM(0.5, 1.0), UNIT, atoms=("linear",))
    assert e is None


def test_generator_r_family():
    grid = GridSpec(9, 17)
    rng = np.random.default_rng(11)
    e = random_convex_expr(rng, RConvex(1.0), UNIT, grid=grid,
                           atoms=("power", "const"))
    if e is not None:
        assert check_r_convex(e, UNIT, 1.0, grid).passed


# ------------------------- stress campaign -------------------------


def test_stress_deterministic_byte_identical():
    cfg = StressConfig(seed=7, trials=6)
    assert summary_json(stress(cfg)) == summary_json(stress(cfg))


def test_stress_counts_are_consistent():
    cfg = StressConfig(seed=3, trials=8)
    s = stress(cfg)
    assert s.trials == 8
    assert set(s.verifiers) == set(STRESS_THEOREMS)
    for st_ in s.verifiers.values():
        assert st_.passes + st_.fails + st_.skips == s.trials


def test_stress_sound_at_default_pool():
    s = stress(StressConfig(seed=19, trials=12))
    for tid, st_ in s.verifiers.items():
        assert st_.fails == 0, tid
        if st_.min_slack is not None:
            assert st_.min_slack >= -1e-8
    assert s.worst_failure is None


def test_stress_r_pool_runs_mean_bound_verifiers():
    s = stress(StressConfig(seed=5, trials=12, alpha_pool=(), m_pool=(),
                            r_pool=(1.0,)))
    ran = s.verifiers["gill_r"].passes + s.verifiers["gr_dominated"].passes
    assert ran > 0
    for st_ in s.verifiers.values():
        assert st_.fails == 0
    # the scaled-argument theorems do not apply to the r family
    assert s.verifiers["t1_first"].skips == 12


def test_stress_small_alpha_rejects_candidates():
    s = stress(StressConfig(seed=2, trials=6, alpha_pool=(0.5,), m_pool=(1.0,)))
    total = sum(st_.passes + st_.fails for st_ in s.verifiers.values())
    assert total > 0
    assert s.rejected_candidates > 0 or s.rejected_trials == 0


def test_summary_serialization_shape():
    s = stress(StressConfig(seed=1, trials=3))
    d = summary_to_dict(s)
    assert list(d.keys()) == ["trials", "rejected_trials",
                              "rejected_candidates", "verifiers",
                              "worst_failure"]
    for entry in d["verifiers"].values():
        assert list(entry.keys()) == ["pass", "fail", "skipped", "min_slack"]


# ------------------------- tightness scan -------------------------


def test_scan_single_point_matches_verifier():
    f, g = parse("0.5*x^2"), parse("1.5*x^2")
    rows = tightness_scan(f, g, UNIT, (1.0,), (1.0,))
    assert [r.theorem_id for r in rows] == ["t1_first", "t1_second", "t2"]
    for row in rows:
        rep = run_verifier(row.theorem_id, f, g, a=0.0, b=1.0, alpha=1.0,
                           m=1.0, hypotheses=False)
        assert row.slack == rep.slack
        assert row.holds == rep.holds
        assert not row.skipped


def test_scan_equal_pair_slack_zero():
    rows = tightness_scan(parse("x^2"), parse("x^2"), UNIT,
                          (0.5, 1.0), (0.5, 1.0))
    assert len(rows) == 2 * 2 * 3
    for row in rows:
        if row.theorem_id == "t1_first":
            assert abs(row.slack) <= 1e-9


def test_scan_zero_against_square():
    rows = tightness_scan(Const(0.0), parse("x^2"), UNIT, (1.0,), (1.0,))
    by_id = {r.theorem_id: r for r in rows}
    assert by_id["t2"].slack == pytest.approx(1.0 / 6.0, abs=1e-10)


def test_scan_marks_domain_errors_skipped():
    # pole at the interval midpoint, which the quadrature rule samples
    rows = tightness_scan(parse("1/(x - 0.5)"), parse("x^2"), UNIT,
                          (1.0,), (1.0,))
    assert all(r.skipped for r in rows)
    assert all(math.isnan(r.slack) for r in rows)
    assert all(not r.holds for r in rows)


def test_scan_csv_golden():
    rows = [ScanRow(1.0, 0.5, "t2", 0.25, True),
            ScanRow(0.5, 0.5, "t1_first", float("nan"), False, True)]
    text = scan_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "alpha,m,theorem,slack,holds"
    assert lines[1] == "1,0.5,t2,0.25,true"
    assert lines[2] == "0.5,0.5,t1_first,nan,skipped"


def test_scan_csv_round_trips_through_float():
    rows = tightness_scan(parse("0.5*x^2"), parse("1.5*x^2"), UNIT,
                          (0.5,), (0.75,))
    text = scan_csv(rows)
    for line, row in zip(text.strip().split("\n")[1:], rows):
        parts = line.split(",")
        assert float(parts[0]) == row.alpha
        assert float(parts[3]) == row.slack

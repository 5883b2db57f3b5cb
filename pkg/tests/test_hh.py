from __future__ import annotations

import json
import math

import numpy as np
import pytest

from hhcert.convexity import GridSpec, NonPositiveFunction
from hhcert.expr import Const, Interval, compose_affine, lin_comb, parse
from hhcert.hh import (NEEDS_G, THEOREM_IDS, classic_hh, dragomir_m, gill_r,
                       gr_dominated, report_json, report_to_dict, run_verifier,
                       set_midpoint, set_trapezoid, t1_first, t1_second, t2,
                       theorem_a, trapezoid_residual)

X2 = parse("x^2")
EX = parse("exp(x)")

# ------------------------- classic two-sided bound -------------------------


def test_classic_worked_values():
    left, right = classic_hh(X2, 0.0, 1.0)
    assert left.lhs == pytest.approx(0.25, abs=1e-15)
    assert left.rhs == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert right.lhs == left.rhs
    assert right.rhs == pytest.approx(0.5, abs=1e-15)
    assert left.holds and right.holds
    assert left.hypothesis["f_convex"].status == "pass"


def test_classic_concave_violates_left():
    left, right = classic_hh(parse("-x^2"), 0.0, 1.0)
    assert not left.holds
    assert left.slack == pytest.approx(-1.0 / 12.0, abs=1e-12)
    assert not right.holds
    assert left.hypothesis["f_convex"].status == "violation"
    assert left.hypothesis["f_convex"].witness is not None


def test_classic_equality_for_affine():
    left, right = classic_hh(parse("3*x - 1"), 0.0, 2.0)
    assert left.slack == pytest.approx(0.0, abs=1e-12)
    assert right.slack == pytest.approx(0.0, abs=1e-12)


# ------------------------- scaled-argument refinements -------------------------


def test_dragomir_worked_values():
    left, right = dragomir_m(X2, 0.0, 1.0, 0.5)
    # (1/2)[f(x) + m f(x/m)] for f = x^2, m = 1/2 equals (3/2) x^2
    assert left.lhs == pytest.approx(0.25, abs=1e-15)
    assert left.rhs == pytest.approx(0.5, abs=1e-12)
    assert right.lhs == left.rhs
    assert right.rhs == pytest.approx(1.5, abs=1e-12)
    assert left.holds and right.holds


def test_dragomir_reduces_to_classic_at_m_one():
    for f in (X2, EX, parse("x^4 + x")):
        cl, cr = classic_hh(f, 0.0, 1.0, hypotheses=False)
        dl, dr = dragomir_m(f, 0.0, 1.0, 1.0, hypotheses=False)
        assert dl.lhs == cl.lhs and dl.rhs == cl.rhs
        assert dr.lhs == cr.lhs and dr.rhs == cr.rhs


def test_dragomir_rejects_bad_m():
    with pytest.raises(ValueError):
        dragomir_m(X2, 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        dragomir_m(X2, 0.0, 1.0, 1.5)
    with pytest.raises(ValueError):
        dragomir_m(X2, -1.0, 1.0, 0.5)     # negative left endpoint


def test_set_midpoint_weighted_forms():
    # alpha = m = 1 reduces to the classic left bound
    rep = set_midpoint(X2, 0.0, 1.0, 1.0, 1.0)
    assert rep.lhs == pytest.approx(0.25, abs=1e-15)
    assert rep.rhs == pytest.approx(1.0 / 3.0, abs=1e-12)
    # constant function with alpha = 1/2, m = 1: both sides collapse
    rep = set_midpoint(Const(1.0), 0.0, 1.0, 0.5, 1.0)
    assert rep.slack == pytest.approx(0.0, abs=1e-12)
    assert rep.holds


def test_set_trapezoid_worked_values():
    rep = set_trapezoid(X2, 0.0, 1.0, 1.0, 1.0)
    assert rep.lhs == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert rep.rhs == pytest.approx(0.5, abs=1e-15)
    assert rep.holds


def test_midpoint_inequality_holds_despite_failed_hypothesis():
    # the report separates conclusion from hypothesis certification
    rep = set_midpoint(parse("x"), 0.0, 1.0, 0.5, 1.0)
    assert rep.holds
    assert rep.slack == pytest.approx(0.0, abs=1e-12)
    assert rep.hypothesis["f_alpha_m_convex"].status == "violation"


# ------------------------- order-r mean bound -------------------------


def test_gill_log_convex_equality():
    rep = gill_r(EX, 0.0, 1.0, 0.0)
    assert rep.lhs == pytest.approx(math.e - 1.0, abs=1e-12)
    assert rep.rhs == pytest.approx(math.e - 1.0, abs=1e-12)
    assert abs(rep.slack) <= 1e-9
    assert rep.holds


def test_gill_order_one_is_trapezoid_bound():
    f = parse("x^2 + 1")
    rep = gill_r(f, 0.0, 1.0, 1.0)
    assert rep.lhs == pytest.approx(4.0 / 3.0, abs=1e-12)
    assert rep.rhs == pytest.approx(1.5, abs=1e-12)      # arithmetic mean of 1, 2
    assert rep.slack == pytest.approx(1.0 / 6.0, abs=1e-12)


def test_gill_requires_positive_f():
    with pytest.raises(NonPositiveFunction):
        gill_r(parse("x - 3"), 0.0, 1.0, 1.0)


def test_gill_reflection_symmetry():
    # reflecting the function across the interval midpoint swaps the
    # endpoint values; the mean bound is symmetric so both sides agree
    f = parse("exp(x) + x^2")
    a, b = 0.25, 1.75
    g = compose_affine(f, -1.0, a + b)
    r1 = gill_r(f, a, b, 0.7, hypotheses=False)
    r2 = gill_r(g, a, b, 0.7, hypotheses=False)
    assert r1.lhs == pytest.approx(r2.lhs, rel=1e-10)
    assert r1.rhs == pytest.approx(r2.rhs, rel=1e-12)


# ------------------------- dominance-form bounds -------------------------


def test_theorem_a_equal_pair_slack_zero():
    first, second = theorem_a(X2, X2, 0.0, 1.0, 0.5)
    assert first.lhs == pytest.approx(0.25, abs=1e-12)
    assert first.slack == pytest.approx(0.0, abs=1e-12)
    assert second.slack == pytest.approx(0.0, abs=1e-12)
    assert first.holds and second.holds


def test_t1_worked_values():
    f, g = parse("0.5*x^2"), parse("1.5*x^2")
    first = t1_first(f, g, 0.0, 1.0, 1.0, 1.0)
    second = t1_second(f, g, 0.0, 1.0, 1.0, 1.0)
    assert first.lhs == pytest.approx(1.0 / 24.0, abs=1e-12)
    assert first.rhs == pytest.approx(1.0 / 8.0, abs=1e-12)
    assert second.lhs == pytest.approx(1.0 / 12.0, abs=1e-12)
    assert second.rhs == pytest.approx(1.0 / 4.0, abs=1e-12)
    assert first.holds and second.holds


def test_t1_reduces_to_theorem_a_at_alpha_one():
    f, g = parse("0.5*x^2 + x"), parse("1.5*x^2 + 2*x")
    for m in (1.0, 0.75, 0.5):
        a1, a2 = theorem_a(f, g, 0.0, 1.0, m, hypotheses=False)
        b1 = t1_first(f, g, 0.0, 1.0, 1.0, m, hypotheses=False)
        b2 = t1_second(f, g, 0.0, 1.0, 1.0, m, hypotheses=False)
        # bitwise: the alpha = 1 weighted forms are the same expressions
        assert (b1.lhs, b1.rhs) == (a1.lhs, a1.rhs)
        assert (b2.lhs, b2.rhs) == (a2.lhs, a2.rhs)


def test_t2_equal_pair_and_zero_function():
    rep = t2(X2, X2, 0.0, 1.0, 1.0, 1.0)
    assert rep.lhs == pytest.approx(1.0 / 6.0, abs=1e-12)
    assert rep.slack == pytest.approx(0.0, abs=1e-12)
    rep = t2(Const(0.0), X2, 0.0, 1.0, 1.0, 1.0)
    assert rep.lhs == 0.0
    assert rep.rhs == pytest.approx(1.0 / 6.0, abs=1e-12)


def test_t2_verdict_matches_residual_route():
    cases = [
        (parse("0.5*x^2 + x"), parse("1.5*x^2 + 2*x"), 0.5, 0.75),
        (X2, X2, 1.0, 1.0),
        (X2, parse("0.1*x^2"), 1.0, 1.0),      # violating pair
        (parse("exp(x) - 1"), parse("2*exp(x)"), 0.75, 1.0),
    ]
    for f, g, alpha, m in cases:
        rep = t2(f, g, 0.0, 1.0, alpha, m, hypotheses=False)
        rp = trapezoid_residual(lin_comb(1.0, g, 1.0, f), 0.0, 1.0, alpha, m)
        rm = trapezoid_residual(lin_comb(1.0, g, -1.0, f), 0.0, 1.0, alpha, m)
        assert rep.holds == (rp >= -rep.tol and rm >= -rep.tol)
        assert rep.slack == pytest.approx(min(rp, rm), abs=1e-10)


def test_t2_violating_pair_reports_negative_slack():
    rep = t2(X2, parse("0.1*x^2"), 0.0, 1.0, 1.0, 1.0)
    assert not rep.holds
    assert rep.slack == pytest.approx(0.1 / 6.0 - 1.0 / 6.0, abs=1e-10)


def test_gr_dominated_worked_values():
    rep = gr_dominated(X2, parse("2*x^2"), 1.0, 2.0, 1.0)
    assert rep.lhs == pytest.approx(1.0 / 6.0, abs=1e-9)
    assert rep.rhs == pytest.approx(1.0 / 3.0, abs=1e-9)
    assert rep.holds
    assert rep.hypothesis["g_r_convex"].status == "pass"
    assert rep.hypothesis["f_dominated"].status == "pass"


def test_gr_dominated_equal_log_convex_pair():
    rep = gr_dominated(EX, EX, 0.0, 1.0, 0.0)
    assert rep.lhs == pytest.approx(0.0, abs=1e-9)
    assert rep.rhs == pytest.approx(0.0, abs=1e-9)
    assert rep.holds


def test_gr_dominated_needs_positive_functions():
    with pytest.raises(NonPositiveFunction):
        gr_dominated(parse("x - 2"), EX, 0.0, 1.0, 0.0)
    with pytest.raises(NonPositiveFunction):
        gr_dominated(EX, parse("x - 2"), 0.0, 1.0, 0.0)


# ------------------------- residual helper -------------------------


def test_trapezoid_residual_nonnegative_for_convex():
    # convex functions keep the trapezoid form above the averaged integral
    for f in (X2, EX, parse("x^4 + 2*x")):
        assert trapezoid_residual(f, 0.0, 1.0, 1.0, 1.0) >= -1e-12


def test_trapezoid_residual_worked_value():
    # f = x^2, alpha = m = 1: (f(0) + f(1))/2 - 1/3 = 1/6
    res = trapezoid_residual(X2, 0.0, 1.0, 1.0, 1.0)
    assert res == pytest.approx(1.0 / 6.0, abs=1e-12)


# ------------------------- dispatcher -------------------------


def _dispatch_args(tid):
    kw = {"a": 0.0, "b": 1.0}
    if tid in ("gill_r", "gr_dominated"):
        kw["r"] = 0.0
    if tid in ("dragomir_left", "dragomir_right", "theorem_a_first",
               "theorem_a_second"):
        kw["m"] = 0.5
    if tid in ("set_midpoint", "set_trapezoid", "t1_first", "t1_second", "t2"):
        kw["alpha"] = 0.5
        kw["m"] = 0.5
    return kw


def test_run_verifier_covers_every_theorem():
    for tid in THEOREM_IDS:
        g = EX if tid in NEEDS_G else None
        rep = run_verifier(tid, EX, g, hypotheses=False, **_dispatch_args(tid))
        assert rep.theorem_id == tid
        assert math.isfinite(rep.slack)


def test_run_verifier_matches_direct_call():
    rep = run_verifier("t2", X2, X2, a=0.0, b=1.0, alpha=1.0, m=1.0)
    direct = t2(X2, X2, 0.0, 1.0, 1.0, 1.0)
    assert report_to_dict(rep) == report_to_dict(direct)


def test_run_verifier_rejects_bad_input():
    with pytest.raises(ValueError):
        run_verifier("no_such_theorem", X2, a=0.0, b=1.0)
    with pytest.raises(ValueError):
        run_verifier("t2", X2, None, a=0.0, b=1.0, alpha=1.0, m=1.0)
    with pytest.raises(ValueError):
        run_verifier("t2", X2, X2, a=0.0, b=1.0, m=1.0)   # missing alpha
    with pytest.raises(ValueError):
        run_verifier("gill_r", EX, a=0.0, b=1.0)          # missing r
    with pytest.raises(ValueError):
        run_verifier("classic_hh_left", X2, a=1.0, b=0.0)  # empty interval


# ------------------------- report serialization -------------------------


def test_report_json_schema_and_key_order():
    rep = t2(X2, X2, 0.0, 1.0, 1.0, 1.0)
    payload = json.loads(report_json(rep))
    assert list(payload.keys()) == ["theorem_id", "params", "lhs", "rhs",
                                    "slack", "tol", "holds", "quad_error",
                                    "hypothesis"]
    assert payload["theorem_id"] == "t2"
    assert payload["holds"] is True
    assert set(payload["hypothesis"]) == {"g_alpha_m_convex", "f_dominated"}


def test_report_json_17_digit_round_trip():
    rep = gill_r(EX, 0.0, 1.0, 0.0)
    payload = json.loads(report_json(rep))
    # 17 significant digits reconstruct the double exactly
    assert payload["lhs"] == rep.lhs
    assert payload["rhs"] == rep.rhs
    assert payload["slack"] == rep.slack


def test_hypothesis_witness_serialized():
    rep = set_midpoint(parse("x"), 0.0, 1.0, 0.5, 1.0)
    payload = json.loads(report_json(rep))
    wit = payload["hypothesis"]["f_alpha_m_convex"]["witness"]
    assert list(wit.keys()) == ["x", "y", "lambda", "lhs", "rhs", "gap"]
    assert wit["gap"] == 0.25


def test_skipped_hypothesis_status():
    rep = t2(X2, X2, 0.0, 1.0, 1.0, 1.0, hypotheses=False)
    assert all(s.status == "skipped" for s in rep.hypothesis.values())


def test_domain_error_hypothesis_status():
    # 1/x is integrable on [1/2, 1] but undefined at the origin, which the
    # certification grid for the scaled class always contains
    f = parse("1/x")
    rep = set_midpoint(f, 0.5, 1.0, 1.0, 1.0)
    assert rep.holds                            # the conclusion still computes
    assert rep.hypothesis["f_alpha_m_convex"].status == "domain_error"

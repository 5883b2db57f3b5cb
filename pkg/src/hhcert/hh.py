"""Two-sided verification of Hermite-Hadamard-type integral inequalities.

Each verifier evaluates both sides of one inequality numerically and
reports lhs, rhs, slack = rhs - lhs, and holds = (slack >= -tol), together
with the accumulated quadrature error and the status of the inequality's
hypotheses as certified on a finite grid.  Sides are always computed,
even when a hypothesis fails, so near-misses can be inspected.

The catalogue (names refer to the shape of the inequality):

* classic_hh          f((a+b)/2) <= avg integral of f <= (f(a)+f(b))/2
* dragomir_m          the m-convex refinement of both halves
* theorem_a           dominance bounds for both halves at alpha = 1
* set_midpoint        (alpha, m) lower half with the 2^alpha weighting
* set_trapezoid       (alpha, m) upper half with the (alpha+1) weighting
* gill_r              avg integral of f <= generalized log mean of f(a), f(b)
* t1_first, t1_second dominance bounds for the weighted halves
* t2                  dominance bound for the trapezoid form
* gr_dominated        dominance bound for the log-mean form

``avg integral`` always means 1/(b-a) * integral over [a, b].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convexity import (DEFAULT_GRID, GridSpec, NonPositiveFunction, Witness,
                        check_alpha_m_convex, check_dominated_alpha_m,
                        check_dominated_r, check_r_convex)
from .expr import DomainError, Expr, Interval, compose_affine, evaluate, lin_comb
from .jsonio import dumps
from .means import gen_log_mean
from .quadrature import integrate

__all__ = [
    "TOL_DEFAULT", "QUAD_TOL_DEFAULT", "THEOREM_IDS",
    "HypothesisStatus", "IneqReport", "report_json", "report_to_dict",
    "classic_hh", "dragomir_m", "theorem_a", "set_midpoint", "set_trapezoid",
    "gill_r", "t1_first", "t1_second", "t2", "gr_dominated",
    "trapezoid_residual", "run_verifier", "NEEDS_G",
]

TOL_DEFAULT = 1e-8
QUAD_TOL_DEFAULT = 1e-10

THEOREM_IDS = (
    "classic_hh_left", "classic_hh_right",
    "dragomir_left", "dragomir_right",
    "theorem_a_first", "theorem_a_second",
    "set_midpoint", "set_trapezoid", "gill_r",
    "t1_first", "t1_second", "t2", "gr_dominated",
)

NEEDS_G = frozenset({"theorem_a_first", "theorem_a_second",
                     "t1_first", "t1_second", "t2", "gr_dominated"})


@dataclass(frozen=True)
class HypothesisStatus:
    status: str  # "pass" | "violation" | "skipped" | "domain_error"
    witness: Witness | None = None
    detail: str | None = None


@dataclass(frozen=True)
class IneqReport:
    theorem_id: str
    params: dict[str, float]
    lhs: float
    rhs: float
    slack: float
    tol: float
    holds: bool
    quad_error: float
    hypothesis: dict[str, HypothesisStatus]


def _report(theorem_id: str, params: dict[str, float], lhs: float, rhs: float,
            tol: float, quad_error: float,
            hypothesis: dict[str, HypothesisStatus]) -> IneqReport:
    slack = rhs - lhs
    return IneqReport(theorem_id, params, float(lhs), float(rhs), float(slack),
                      tol, bool(slack >= -tol), float(quad_error), hypothesis)


# ------------------------- serialization -------------------------

def _witness_dict(w: Witness) -> dict:
    return {"x": w.x, "y": w.y, "lambda": w.lam,
            "lhs": w.lhs, "rhs": w.rhs, "gap": w.gap}


def _status_dict(s: HypothesisStatus) -> dict:
    d: dict = {"status": s.status}
    if s.witness is not None:
        d["witness"] = _witness_dict(s.witness)
    if s.detail is not None:
        d["detail"] = s.detail
    return d


def report_to_dict(rep: IneqReport) -> dict:
    return {
        "theorem_id": rep.theorem_id,
        "params": dict(rep.params),
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "slack": rep.slack,
        "tol": rep.tol,
        "holds": rep.holds,
        "quad_error": rep.quad_error,
        "hypothesis": {name: _status_dict(s) for name, s in rep.hypothesis.items()},
    }


def report_json(rep: IneqReport) -> str:
    return dumps(report_to_dict(rep))


# ------------------------- shared pieces -------------------------

_SKIPPED = HypothesisStatus("skipped")


def _check_ab(a: float, b: float) -> None:
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")


def _mean_integral(e: Expr, a: float, b: float, quad_tol: float) -> tuple[float, float]:
    res = integrate(e, Interval(a, b), quad_tol)
    w = b - a
    return res.value / w, res.error_bound / w


def _half_sum_integrand(f: Expr, m: float) -> Expr:
    """(f(x) + m*f(x/m)) / 2 as an expression tree."""
    return lin_comb(0.5, f, 0.5 * m, compose_affine(f, 1.0 / m, 0.0))


def _weighted_integrand(f: Expr, alpha: float, m: float) -> Expr:
    """(f(x) + m*(2^alpha - 1)*f(x/m)) / 2^alpha as an expression tree."""
    two_a = 2.0 ** alpha
    return lin_comb(1.0 / two_a, f, m * (two_a - 1.0) / two_a,
                    compose_affine(f, 1.0 / m, 0.0))


def _trapezoid_form(f: Expr, a: float, b: float, alpha: float, m: float) -> float:
    fa = evaluate(f, a)
    fb = evaluate(f, b)
    fam = evaluate(f, a / m)
    fbm = evaluate(f, b / m)
    return 0.5 * ((fa + fb + (m * alpha) * fam + (m * alpha) * fbm) / (alpha + 1.0))


def _endpoint_form(f: Expr, a: float, b: float, alpha: float, m: float) -> float:
    fa = evaluate(f, a)
    fam = evaluate(f, a / m)
    fbm = evaluate(f, b / m)
    fbm2 = evaluate(f, b / m ** 2)
    return 0.5 * ((fa + m * fam) / (alpha + 1.0)
                  + (m * alpha) * ((fbm + m * fbm2) / (alpha + 1.0)))


def _sample_positive(f: Expr, a: float, b: float, name: str) -> None:
    xs = np.linspace(a, b, 129)
    vals = evaluate(f, xs)
    bad = np.asarray(vals <= 0.0)
    if bad.any():
        idx = int(np.argmax(bad))
        raise NonPositiveFunction(name, float(xs[idx]), float(np.asarray(vals)[idx]))


def _convexity_status(f: Expr, iv: Interval, alpha: float, m: float,
                      grid: GridSpec) -> HypothesisStatus:
    try:
        res = check_alpha_m_convex(f, iv, alpha, m, grid)
    except (DomainError, NonPositiveFunction, ValueError) as exc:
        return HypothesisStatus("domain_error", detail=str(exc))
    if res.passed:
        return HypothesisStatus("pass")
    return HypothesisStatus("violation", witness=res.witness)


def _dominance_status(f: Expr, g: Expr, iv: Interval, alpha: float, m: float,
                      grid: GridSpec) -> HypothesisStatus:
    try:
        res = check_dominated_alpha_m(f, g, iv, alpha, m, grid)
    except (DomainError, NonPositiveFunction, ValueError) as exc:
        return HypothesisStatus("domain_error", detail=str(exc))
    if res.passed:
        return HypothesisStatus("pass")
    return HypothesisStatus("violation", witness=res.witness)


def _r_convex_status(f: Expr, iv: Interval, r: float, grid: GridSpec) -> HypothesisStatus:
    try:
        res = check_r_convex(f, iv, r, grid)
    except (DomainError, NonPositiveFunction, ValueError) as exc:
        return HypothesisStatus("domain_error", detail=str(exc))
    if res.passed:
        return HypothesisStatus("pass")
    return HypothesisStatus("violation", witness=res.witness)


def _r_dominance_status(f: Expr, g: Expr, iv: Interval, r: float,
                        grid: GridSpec) -> HypothesisStatus:
    try:
        res = check_dominated_r(f, g, iv, r, grid)
    except (DomainError, NonPositiveFunction, ValueError) as exc:
        return HypothesisStatus("domain_error", detail=str(exc))
    if res.passed:
        return HypothesisStatus("pass")
    return HypothesisStatus("violation", witness=res.witness)


# ------------------------- verifiers -------------------------

def classic_hh(f: Expr, a: float, b: float, *, tol: float = TOL_DEFAULT,
               quad_tol: float = QUAD_TOL_DEFAULT, hypotheses: bool = True,
               grid: GridSpec = DEFAULT_GRID) -> tuple[IneqReport, IneqReport]:
    """Both halves of the classical midpoint/trapezoid sandwich for convex f."""
    _check_ab(a, b)
    avg, err = _mean_integral(f, a, b, quad_tol)
    mid = evaluate(f, 0.5 * (a + b))
    ends = 0.5 * (evaluate(f, a) + evaluate(f, b))
    if hypotheses:
        hyp = {"f_convex": _convexity_status(f, Interval(a, b), 1.0, 1.0, grid)}
    else:
        hyp = {"f_convex": _SKIPPED}
    params = {"a": a, "b": b}
    return (_report("classic_hh_left", params, mid, avg, tol, err, hyp),
            _report("classic_hh_right", params, avg, ends, tol, err, hyp))


def dragomir_m(f: Expr, a: float, b: float, m: float, *, tol: float = TOL_DEFAULT,
               quad_tol: float = QUAD_TOL_DEFAULT, hypotheses: bool = True,
               grid: GridSpec = DEFAULT_GRID) -> tuple[IneqReport, IneqReport]:
    """The m-convex sandwich: midpoint value, averaged half-sum integral,
    and the four-point endpoint form."""
    _check_ab(a, b)
    _check_m_family(a, m)
    avg, err = _mean_integral(_half_sum_integrand(f, m), a, b, quad_tol)
    mid = evaluate(f, 0.5 * (a + b))
    ends = _endpoint_form(f, a, b, 1.0, m)
    if hypotheses:
        hyp = {"f_m_convex": _convexity_status(
            f, Interval(0.0, b / m ** 2), 1.0, m, grid)}
    else:
        hyp = {"f_m_convex": _SKIPPED}
    params = {"a": a, "b": b, "m": m}
    return (_report("dragomir_left", params, mid, avg, tol, err, hyp),
            _report("dragomir_right", params, avg, ends, tol, err, hyp))


def theorem_a(f: Expr, g: Expr, a: float, b: float, m: float, *,
              tol: float = TOL_DEFAULT, quad_tol: float = QUAD_TOL_DEFAULT,
              hypotheses: bool = True,
              grid: GridSpec = DEFAULT_GRID) -> tuple[IneqReport, IneqReport]:
    """Dominance refinement of both halves of the m-convex sandwich: the
    deviation of f's forms is bounded by the matching deviation of g's."""
    _check_ab(a, b)
    _check_m_family(a, m)
    avg_f, err_f = _mean_integral(_half_sum_integrand(f, m), a, b, quad_tol)
    avg_g, err_g = _mean_integral(_half_sum_integrand(g, m), a, b, quad_tol)
    err = err_f + err_g
    mid_f = evaluate(f, 0.5 * (a + b))
    mid_g = evaluate(g, 0.5 * (a + b))
    ends_f = _endpoint_form(f, a, b, 1.0, m)
    ends_g = _endpoint_form(g, a, b, 1.0, m)
    if hypotheses:
        cert_iv = Interval(0.0, b / m ** 2)
        hyp = {"g_m_convex": _convexity_status(g, cert_iv, 1.0, m, grid),
               "f_dominated": _dominance_status(f, g, cert_iv, 1.0, m, grid)}
    else:
        hyp = {"g_m_convex": _SKIPPED, "f_dominated": _SKIPPED}
    params = {"a": a, "b": b, "m": m}
    return (_report("theorem_a_first", params, abs(avg_f - mid_f),
                    avg_g - mid_g, tol, err, hyp),
            _report("theorem_a_second", params, abs(ends_f - avg_f),
                    ends_g - avg_g, tol, err, hyp))


def set_midpoint(f: Expr, a: float, b: float, alpha: float, m: float, *,
                 tol: float = TOL_DEFAULT, quad_tol: float = QUAD_TOL_DEFAULT,
                 hypotheses: bool = True, grid: GridSpec = DEFAULT_GRID) -> IneqReport:
    """Midpoint half for (alpha, m)-convex f with the 2^alpha weighting."""
    _check_ab(a, b)
    _check_m_family(a, m, alpha)
    avg, err = _mean_integral(_weighted_integrand(f, alpha, m), a, b, quad_tol)
    mid = evaluate(f, 0.5 * (a + b))
    if hypotheses:
        hyp = {"f_alpha_m_convex": _convexity_status(
            f, Interval(0.0, b / m), alpha, m, grid)}
    else:
        hyp = {"f_alpha_m_convex": _SKIPPED}
    params = {"a": a, "b": b, "alpha": alpha, "m": m}
    return _report("set_midpoint", params, mid, avg, tol, err, hyp)


def set_trapezoid(f: Expr, a: float, b: float, alpha: float, m: float, *,
                  tol: float = TOL_DEFAULT, quad_tol: float = QUAD_TOL_DEFAULT,
                  hypotheses: bool = True, grid: GridSpec = DEFAULT_GRID) -> IneqReport:
    """Trapezoid half for (alpha, m)-convex f with the (alpha+1) weighting."""
    _check_ab(a, b)
    _check_m_family(a, m, alpha)
    avg, err = _mean_integral(f, a, b, quad_tol)
    trap = _trapezoid_form(f, a, b, alpha, m)
    if hypotheses:
        hyp = {"f_alpha_m_convex": _convexity_status(
            f, Interval(0.0, b / m), alpha, m, grid)}
    else:
        hyp = {"f_alpha_m_convex": _SKIPPED}
    params = {"a": a, "b": b, "alpha": alpha, "m": m}
    return _report("set_trapezoid", params, avg, trap, tol, err, hyp)


def gill_r(f: Expr, a: float, b: float, r: float, *, tol: float = TOL_DEFAULT,
           quad_tol: float = QUAD_TOL_DEFAULT, hypotheses: bool = True,
           grid: GridSpec = DEFAULT_GRID) -> IneqReport:
    """Averaged integral of a positive r-convex f against the generalized
    log mean of its endpoint values."""
    _check_ab(a, b)
    _sample_positive(f, a, b, "f")
    avg, err = _mean_integral(f, a, b, quad_tol)
    rhs = gen_log_mean(evaluate(f, a), evaluate(f, b), r).value
    if hypotheses:
        hyp = {"f_r_convex": _r_convex_status(f, Interval(a, b), r, grid)}
    else:
        hyp = {"f_r_convex": _SKIPPED}
    params = {"a": a, "b": b, "r": r}
    return _report("gill_r", params, avg, rhs, tol, err, hyp)


def t1_first(f: Expr, g: Expr, a: float, b: float, alpha: float, m: float, *,
             tol: float = TOL_DEFAULT, quad_tol: float = QUAD_TOL_DEFAULT,
             hypotheses: bool = True, grid: GridSpec = DEFAULT_GRID) -> IneqReport:
    """Dominance bound on the deviation of the weighted integral average
    from the midpoint value."""
    _check_ab(a, b)
    _check_m_family(a, m, alpha)
    avg_f, err_f = _mean_integral(_weighted_integrand(f, alpha, m), a, b, quad_tol)
    avg_g, err_g = _mean_integral(_weighted_integrand(g, alpha, m), a, b, quad_tol)
    mid_f = evaluate(f, 0.5 * (a + b))
    mid_g = evaluate(g, 0.5 * (a + b))
    if hypotheses:
        cert_iv = Interval(0.0, b / m)
        hyp = {"g_alpha_m_convex": _convexity_status(g, cert_iv, alpha, m, grid),
               "f_dominated": _dominance_status(f, g, cert_iv, alpha, m, grid)}
    else:
        hyp = {"g_alpha_m_convex": _SKIPPED, "f_dominated": _SKIPPED}
    params = {"a": a, "b": b, "alpha": alpha, "m": m}
    return _report("t1_first", params, abs(avg_f - mid_f), avg_g - mid_g,
                   tol, err_f + err_g, hyp)


def t1_second(f: Expr, g: Expr, a: float, b: float, alpha: float, m: float, *,
              tol: float = TOL_DEFAULT, quad_tol: float = QUAD_TOL_DEFAULT,
              hypotheses: bool = True, grid: GridSpec = DEFAULT_GRID) -> IneqReport:
    """Dominance bound on the deviation of the endpoint form from the
    averaged half-sum integral."""
    _check_ab(a, b)
    _check_m_family(a, m, alpha)
    avg_f, err_f = _mean_integral(_half_sum_integrand(f, m), a, b, quad_tol)
    avg_g, err_g = _mean_integral(_half_sum_integrand(g, m), a, b, quad_tol)
    ends_f = _endpoint_form(f, a, b, alpha, m)
    ends_g = _endpoint_form(g, a, b, alpha, m)
    if hypotheses:
        cert_iv = Interval(0.0, b / m ** 2)
        hyp = {"g_alpha_m_convex": _convexity_status(g, cert_iv, alpha, m, grid),
               "f_dominated": _dominance_status(f, g, cert_iv, alpha, m, grid)}
    else:
        hyp = {"g_alpha_m_convex": _SKIPPED, "f_dominated": _SKIPPED}
    params = {"a": a, "b": b, "alpha": alpha, "m": m}
    return _report("t1_second", params, abs(ends_f - avg_f), ends_g - avg_g,
                   tol, err_f + err_g, hyp)


def t2(f: Expr, g: Expr, a: float, b: float, alpha: float, m: float, *,
       tol: float = TOL_DEFAULT, quad_tol: float = QUAD_TOL_DEFAULT,
       hypotheses: bool = True, grid: GridSpec = DEFAULT_GRID) -> IneqReport:
    """Dominance bound on the deviation of the trapezoid form from the
    averaged integral."""
    _check_ab(a, b)
    _check_m_family(a, m, alpha)
    avg_f, err_f = _mean_integral(f, a, b, quad_tol)
    avg_g, err_g = _mean_integral(g, a, b, quad_tol)
    trap_f = _trapezoid_form(f, a, b, alpha, m)
    trap_g = _trapezoid_form(g, a, b, alpha, m)
    if hypotheses:
        cert_iv = Interval(0.0, b / m)
        hyp = {"g_alpha_m_convex": _convexity_status(g, cert_iv, alpha, m, grid),
               "f_dominated": _dominance_status(f, g, cert_iv, alpha, m, grid)}
    else:
        hyp = {"g_alpha_m_convex": _SKIPPED, "f_dominated": _SKIPPED}
    params = {"a": a, "b": b, "alpha": alpha, "m": m}
    return _report("t2", params, abs(trap_f - avg_f), trap_g - avg_g,
                   tol, err_f + err_g, hyp)


def trapezoid_residual(f: Expr, a: float, b: float, alpha: float, m: float,
                       quad_tol: float = QUAD_TOL_DEFAULT) -> float:
    """Trapezoid form minus averaged integral; nonnegative for (alpha, m)-
    convex f.  The bound of :func:`t2` holds exactly when this residual is
    nonnegative for both g + f and g - f."""
    avg, _ = _mean_integral(f, a, b, quad_tol)
    return _trapezoid_form(f, a, b, alpha, m) - avg


def gr_dominated(f: Expr, g: Expr, a: float, b: float, r: float, *,
                 tol: float = TOL_DEFAULT, quad_tol: float = QUAD_TOL_DEFAULT,
                 hypotheses: bool = True, grid: GridSpec = DEFAULT_GRID) -> IneqReport:
    """Dominance bound on the deviation of the endpoint log mean from the
    averaged integral."""
    _check_ab(a, b)
    _sample_positive(g, a, b, "g")
    _sample_positive(f, a, b, "f")
    avg_f, err_f = _mean_integral(f, a, b, quad_tol)
    avg_g, err_g = _mean_integral(g, a, b, quad_tol)
    lf = gen_log_mean(evaluate(f, a), evaluate(f, b), r).value
    lg = gen_log_mean(evaluate(g, a), evaluate(g, b), r).value
    if hypotheses:
        iv = Interval(a, b)
        hyp = {"g_r_convex": _r_convex_status(g, iv, r, grid),
               "f_dominated": _r_dominance_status(f, g, iv, r, grid)}
    else:
        hyp = {"g_r_convex": _SKIPPED, "f_dominated": _SKIPPED}
    params = {"a": a, "b": b, "r": r}
    return _report("gr_dominated", params, abs(lf - avg_f), lg - avg_g,
                   tol, err_f + err_g, hyp)


def _check_m_family(a: float, m: float, alpha: float | None = None) -> None:
    if not 0.0 < m <= 1.0:
        raise ValueError(f"m must lie in (0, 1], got {m}")
    if alpha is not None and not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if a < 0.0:
        raise ValueError(f"this family needs a >= 0, got a={a}")


# ------------------------- dispatch by theorem id -------------------------

def run_verifier(theorem_id: str, f: Expr, g: Expr | None = None, *,
                 a: float, b: float, alpha: float | None = None,
                 m: float | None = None, r: float | None = None,
                 tol: float = TOL_DEFAULT, quad_tol: float = QUAD_TOL_DEFAULT,
                 hypotheses: bool = True, grid: GridSpec = DEFAULT_GRID) -> IneqReport:
    """Run a single verifier by report id (pairs split into left/right or
    first/second) and return its report."""
    if theorem_id not in THEOREM_IDS:
        raise ValueError(f"unknown theorem id {theorem_id!r}")
    if theorem_id in NEEDS_G and g is None:
        raise ValueError(f"{theorem_id} needs a dominating function g")
    kw = dict(tol=tol, quad_tol=quad_tol, hypotheses=hypotheses, grid=grid)

    def need(name: str, value: float | None) -> float:
        if value is None:
            raise ValueError(f"{theorem_id} needs --{name}")
        return value

    if theorem_id == "classic_hh_left":
        return classic_hh(f, a, b, **kw)[0]
    if theorem_id == "classic_hh_right":
        return classic_hh(f, a, b, **kw)[1]
    if theorem_id == "dragomir_left":
        return dragomir_m(f, a, b, need("m", m), **kw)[0]
    if theorem_id == "dragomir_right":
        return dragomir_m(f, a, b, need("m", m), **kw)[1]
    if theorem_id == "theorem_a_first":
        return theorem_a(f, g, a, b, need("m", m), **kw)[0]
    if theorem_id == "theorem_a_second":
        return theorem_a(f, g, a, b, need("m", m), **kw)[1]
    if theorem_id == "set_midpoint":
        return set_midpoint(f, a, b, need("alpha", alpha), need("m", m), **kw)
    if theorem_id == "set_trapezoid":
        return set_trapezoid(f, a, b, need("alpha", alpha), need("m", m), **kw)
    if theorem_id == "gill_r":
        return gill_r(f, a, b, need("r", r), **kw)
    if theorem_id == "t1_first":
        return t1_first(f, g, a, b, need("alpha", alpha), need("m", m), **kw)
    if theorem_id == "t1_second":
        return t1_second(f, g, a, b, need("alpha", alpha), need("m", m), **kw)
    if theorem_id == "t2":
        return t2(f, g, a, b, need("alpha", alpha), need("m", m), **kw)
    return gr_dominated(f, g, a, b, need("r", r), **kw)

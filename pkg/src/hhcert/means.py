"""Weighted power means and the generalized logarithmic mean.

Both families have removable singularities in the order parameter r.
Branch selection is by explicit epsilon thresholds so that results are
deterministic and continuous across the cuts:

* power mean  M_r(x, y; lam) = (lam*x^r + (1-lam)*y^r)^(1/r), with the
  geometric mean x^lam * y^(1-lam) at r = 0;
* generalized log mean  L_r(x, y) = (r/(r+1)) * (x^(r+1) - y^(r+1)) / (x^r - y^r),
  with dedicated branches at r = 0, r = -1 and on the diagonal x = y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "EPS_R", "EPS_XY", "MeanBranchTag", "MeanBranch",
    "power_mean", "gen_log_mean",
]

# |r| below this collapses to the r = 0 branch; likewise |r+1| for r = -1
EPS_R = 1e-9
# relative diagonal threshold: |x - y| <= EPS_XY * max(x, y) means x = y
EPS_XY = 1e-12


class MeanBranchTag(Enum):
    GENERAL_R = "general"
    LOG_MEAN = "log"
    HARMONIC_LOG = "harmonic-log"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class MeanBranch:
    tag: MeanBranchTag
    value: float


def _power_mean_raw(x, y, lam, r: float):
    """Branch-selected power mean without argument validation.

    Accepts floats or broadcastable numpy arrays for x, y and lam.  The
    endpoints lam = 0 and lam = 1 return y and x exactly.  For positive
    x, y the result is clamped into [min, max] so internality holds to
    the last bit.  Non-positive inputs are the caller's concern: where
    the defining powers are undefined the result is NaN.
    """
    with np.errstate(all="ignore"):
        if abs(r) < EPS_R:
            res = np.power(x, lam) * np.power(y, 1.0 - lam)
        else:
            s = lam * np.power(x, r) + (1.0 - lam) * np.power(y, r)
            res = np.power(s, 1.0 / r)
        res = np.where(lam == 1.0, x, np.where(lam == 0.0, y, res))
        lo = np.minimum(x, y)
        hi = np.maximum(x, y)
        res = np.where((lo > 0.0), np.clip(res, lo, hi), res)
    return res


def power_mean(x: float, y: float, lam: float, r: float) -> float:
    """Weighted power mean of order r of two positive reals."""
    if not (x > 0.0 and y > 0.0):
        raise ValueError(f"power_mean needs positive x and y, got {x}, {y}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"weight lam must lie in [0, 1], got {lam}")
    return float(_power_mean_raw(float(x), float(y), float(lam), float(r)))


def gen_log_mean(x: float, y: float, r: float) -> MeanBranch:
    """Generalized logarithmic mean of order r of two positive reals.

    Returns the value together with the branch that produced it.  The
    formulas are evaluated through expm1/log1p of u = log(x/y), which
    avoids cancellation when x and y or the powers x^r and y^r are close.
    """
    if not (x > 0.0 and y > 0.0):
        raise ValueError(f"gen_log_mean needs positive x and y, got {x}, {y}")
    x = float(x)
    y = float(y)
    r = float(r)
    if abs(x - y) <= EPS_XY * max(x, y):
        return MeanBranch(MeanBranchTag.DIAGONAL, x)
    d = x - y
    u = math.log1p(d / y)  # log(x) - log(y), accurate near the diagonal
    if abs(r) < EPS_R:
        tag, value = MeanBranchTag.LOG_MEAN, d / u
    elif abs(r + 1.0) < EPS_R:
        tag, value = MeanBranchTag.HARMONIC_LOG, x * y * u / d
    else:
        # (r/(r+1)) * (x^(r+1) - y^(r+1)) / (x^r - y^r) rewritten via
        # x^s - y^s = y^s * expm1(s*u); the y^s factors reduce to a single y
        tag = MeanBranchTag.GENERAL_R
        value = (r / (r + 1.0)) * y * math.expm1((r + 1.0) * u) / math.expm1(r * u)
    value = min(max(value, min(x, y)), max(x, y))
    return MeanBranch(tag, value)

"""Prediction-center estimators for one class of sorted scores.

Four estimators are offered: arithmetic mean, sample median, and two
"balance" centers that pick the sample at which the distances (or squared
distances) to the samples below and above it balance out.

The balance methods are discrete: the balance equation generally has no
exact solution at a sample point, so the sample with the smallest absolute
residual is returned, ties going to the smaller index.  Residuals are
evaluated in exact integer arithmetic (every double is an integer multiple
of a power of two), so the selected index never depends on summation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .model import ClassScores


class CenterMethod(str, Enum):
    MEAN = "mean"
    MEDIAN = "median"
    BALANCE = "balance"
    WEIGHTED_BALANCE = "weighted-balance"

    @property
    def is_balance(self) -> bool:
        return self in (CenterMethod.BALANCE, CenterMethod.WEIGHTED_BALANCE)


@dataclass(frozen=True)
class CenterResult:
    """A class center.

    Attributes:
        method: estimator that produced the value.
        value: the center, always within ``[min, max]`` of the scores.
        selected_index: index of the chosen sample (balance methods only).
        imbalance: signed residual ``left - right`` of the balance equation
            at the chosen sample; 0 for mean and median.
    """

    method: CenterMethod
    value: float
    selected_index: int | None = None
    imbalance: float = 0.0


def center_mean(scores: ClassScores) -> CenterResult:
    value = math.fsum(scores.scores.tolist()) / scores.n
    # rounding can push the quotient one ulp past the extremes
    value = min(max(value, scores.min), scores.max)
    return CenterResult(CenterMethod.MEAN, value)


def center_median(scores: ClassScores) -> CenterResult:
    x = scores.scores
    n = scores.n
    half = n // 2
    if n % 2:
        value = float(x[half])
    else:
        lo, hi = float(x[half - 1]), float(x[half])
        value = (lo + hi) / 2
        if not math.isfinite(value):
            value = lo / 2 + hi / 2
    return CenterResult(CenterMethod.MEDIAN, value)


def _as_integers(x: np.ndarray) -> tuple[list[int], int]:
    """Exact integer representation: ``x[i] == ints[i] / denom``."""
    ratios = [v.as_integer_ratio() for v in x.tolist()]
    denom = max(q for _, q in ratios)
    return [p * (denom // q) for p, q in ratios], denom


def _argmin_abs(residuals: list[int]) -> int:
    best = 0
    best_abs = abs(residuals[0])
    for i, r in enumerate(residuals):
        if abs(r) < best_abs:
            best, best_abs = i, abs(r)
    return best


def distance_residuals(scores: ClassScores) -> tuple[list[int], int]:
    """Exact residuals of the distance balance at every sample.

    Returns integers ``r`` and a scale ``s`` with residual ``r[m] / s`` equal to
    ``sum_{n<m}(x_m - x_n) - sum_{n>m}(x_n - x_m)``.  Collapsing the prefix sums
    gives ``N * x_m - sum(x)``, so the residual is monotone in ``m`` and changes
    sign at the arithmetic mean.
    """
    k, denom = _as_integers(scores.scores)
    total = sum(k)
    n = len(k)
    return [n * km - total for km in k], denom


def weighted_residuals(scores: ClassScores) -> tuple[list[int], int]:
    """Exact residuals of the squared-distance balance, scaled by ``denom**2``."""
    k, denom = _as_integers(scores.scores)
    n = len(k)
    s1 = sum(k)
    s2 = sum(v * v for v in k)
    out = []
    a = b = 0  # prefix sums of k and k**2 over n < m
    for m, km in enumerate(k):
        left = m * km * km - 2 * km * a + b
        above1 = s1 - a - km
        above2 = s2 - b - km * km
        right = (n - 1 - m) * km * km - 2 * km * above1 + above2
        out.append(left - right)
        a += km
        b += km * km
    return out, denom * denom


def _balance_result(method: CenterMethod, scores: ClassScores, residuals, scale) -> CenterResult:
    m = _argmin_abs(residuals)
    return CenterResult(method, float(scores.scores[m]), m, float(Fraction(residuals[m], scale)))


def center_distance_balance(scores: ClassScores) -> CenterResult:
    residuals, scale = distance_residuals(scores)
    return _balance_result(CenterMethod.BALANCE, scores, residuals, scale)


def center_weighted_balance(scores: ClassScores) -> CenterResult:
    residuals, scale = weighted_residuals(scores)
    return _balance_result(CenterMethod.WEIGHTED_BALANCE, scores, residuals, scale)


_ESTIMATORS = {
    CenterMethod.MEAN: center_mean,
    CenterMethod.MEDIAN: center_median,
    CenterMethod.BALANCE: center_distance_balance,
    CenterMethod.WEIGHTED_BALANCE: center_weighted_balance,
}


def compute_center(scores: ClassScores, method: CenterMethod | str = CenterMethod.BALANCE) -> CenterResult:
    return _ESTIMATORS[CenterMethod(method)](scores)

"""Brute-force reference computations, independent of the package code paths."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

GRID = 2**24


def balance_argmin_int(k: np.ndarray, weighted: bool) -> tuple[int, int]:
    """O(n^2) argmin of the literal balance residual on integer scores.

    Returns ``(index, residual)``; ties go to the smallest index.
    """
    k = np.asarray(k, dtype=np.int64)
    n = k.size
    diff = k[:, None] - k[None, :]  # diff[m, j] = k_m - k_j
    if weighted:
        diff = diff * diff
        below = np.where(np.tri(n, n, -1, dtype=bool), diff, 0).sum(axis=1)
        above = np.where(np.tri(n, n, -1, dtype=bool).T, diff, 0).sum(axis=1)
    else:
        below = np.where(np.tri(n, n, -1, dtype=bool), diff, 0).sum(axis=1)
        above = np.where(np.tri(n, n, -1, dtype=bool).T, -diff, 0).sum(axis=1)
    residual = below - above
    m = int(np.argmin(np.abs(residual)))
    return m, int(residual[m])


def balance_residuals_float(x, weighted: bool) -> list[float]:
    """Literal float evaluation of the balance residual at every sample."""
    x = [float(v) for v in x]
    out = []
    for m, xm in enumerate(x):
        if weighted:
            left = math.fsum((xm - v) ** 2 for v in x[:m])
            right = math.fsum((v - xm) ** 2 for v in x[m + 1 :])
        else:
            left = math.fsum(xm - v for v in x[:m])
            right = math.fsum(v - xm for v in x[m + 1 :])
        out.append(left - right)
    return out


def rnd(x, center: float) -> tuple[float, object, float]:
    """Radius, Normalize, Density recomputed from their defining formulas."""
    x = np.asarray(x, dtype=np.float64)
    lo, hi = float(x.min()), float(x.max())
    r = max(center - lo, hi - center) / 2
    norm = "one-sided" if hi == center else (center - lo) / (hi - center)
    dens = 0.0 if r == 0 else float(np.sum(np.abs(x - center) / r) / x.size)
    return r, norm, dens


def acer_candidates(lower, upper) -> list[float]:
    pooled = np.unique(np.concatenate([lower, upper]))
    mids = [(a + b) / 2 for a, b in zip(pooled[:-1], pooled[1:])]
    return [pooled[0] - 1.0] + mids + [pooled[-1] + 1.0]


def acer_objective(lower, upper, t: float) -> float:
    """Gap between the two classes' error fractions with strict comparisons."""
    return abs(np.sum(np.asarray(lower) > t) / len(lower) - np.sum(np.asarray(upper) < t) / len(upper))


def mann_whitney_auc(genuine, attack, genuine_low: bool) -> float:
    g = np.asarray(genuine)[:, None]
    a = np.asarray(attack)[None, :]
    wins = np.sum(g < a) if genuine_low else np.sum(g > a)
    ties = np.sum(g == a)
    return (wins + 0.5 * ties) / (g.size * a.size)


def circle_crossing(c1: float, r1: float, c2: float, r2: float) -> tuple[float, float]:
    """Intersection of two axis-centred circles, solved numerically in 2-D.

    Finds where the upper semicircles meet by bracketing root search over
    the x-range both circles cover, then returns ``(x, y)``.
    """
    a = max(c1 - r1, c2 - r2)
    b = min(c1 + r1, c2 + r2)

    def height_gap(x):
        h1 = math.sqrt(max(r1 * r1 - (x - c1) ** 2, 0.0))
        h2 = math.sqrt(max(r2 * r2 - (x - c2) ** 2, 0.0))
        return h1 - h2

    fa, fb = height_gap(a), height_gap(b)
    if fa == 0:
        x = a
    elif fb == 0:
        x = b
    else:
        x = brentq(height_gap, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    return x, math.sqrt(max(r1 * r1 - (x - c1) ** 2, 0.0))


def random_scores(rng: np.random.Generator, n: int) -> np.ndarray:
    """Mixed-distribution scores quantized to the 2**-24 grid, within [-2, 2]."""
    kind = rng.integers(0, 8)
    if kind == 0:
        x = rng.uniform(0, 1, n)
    elif kind == 1:
        x = rng.normal(rng.uniform(0.2, 0.8), rng.uniform(0.01, 0.2), n)
    elif kind == 2:
        x = rng.beta(0.5, 0.5, n)
    elif kind == 3:
        x = rng.beta(rng.uniform(1, 8), rng.uniform(0.3, 2), n)
    elif kind == 4:
        pick = rng.random(n) < rng.uniform(0.1, 0.9)
        x = np.where(pick, rng.normal(0.2, 0.05, n), rng.normal(0.8, 0.1, n))
    elif kind == 5:
        x = rng.exponential(rng.uniform(0.01, 0.3), n)
    elif kind == 6:
        levels = rng.uniform(0, 1, rng.integers(1, 6))
        x = rng.choice(levels, n)
    else:
        x = rng.lognormal(-1.5, 0.8, n)
    k = np.round(np.clip(x, -2, 2) * GRID).astype(np.int64)
    return k

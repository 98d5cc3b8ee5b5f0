"""Threshold strategies and FAS error metrics.

Strategies operate on the lower and upper class of a :class:`LabeledDataset`
and are polarity-free; only the metrics need to know which class is
genuine.  Metrics follow the bona-fide-positive convention of the ISO PAD
rates: an attack accepted as genuine is a false positive, so
``FPR == APCER`` and ``TPR == 1 - BPCER``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .centers import CenterMethod
from .geometry import DomainSummary, summarize_domain
from .model import LabeledDataset, Polarity


class Strategy(str, Enum):
    FAKE_BORDER = "fake-border"
    LIVE_BORDER = "live-border"
    CROSS_POINT = "cross-point"
    BALANCE_POINT = "balance-point"
    ACER_LEFT = "acer-left"
    ACER_RIGHT = "acer-right"
    ACER_MID = "acer-mid"


class Note(str, Enum):
    OK = "ok"
    CLASSES_OVERLAP = "classes-overlap"
    CLAMPED_TO_GAP = "clamped-to-gap"
    CIRCLES_DISJOINT = "circles-disjoint-fallback"
    CIRCLES_NESTED = "circles-nested-fallback"


class TieRule(str, Enum):
    EQUAL_IS_GENUINE = "equal-is-genuine"
    EQUAL_IS_ATTACK = "equal-is-attack"


@dataclass(frozen=True)
class ThresholdCandidate:
    strategy: Strategy
    value: float
    valid: bool = True
    note: Note = Note.OK

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"threshold must be finite, got {self.value!r}")


@dataclass(frozen=True)
class ThresholdEvaluation:
    threshold: float
    tp: int
    fp: int
    tn: int
    fn: int
    apcer: float
    bpcer: float
    acer: float
    fpr: float
    tpr: float


# --- borders -----------------------------------------------------------------


def threshold_borders(data: LabeledDataset) -> tuple[ThresholdCandidate, ThresholdCandidate]:
    """Inner extremes of the two classes, returned as ``(fake_border, live_border)``.

    The lower class border is ``max(lower)``, the upper class border
    ``min(upper)``.  Overlapping classes mark both invalid.
    """
    note = Note.CLASSES_OVERLAP if data.overlap else Note.OK
    valid = note is Note.OK
    by_class = {
        data.lower_name: data.lower.max,
        data.upper_name: data.upper.min,
    }
    return (
        ThresholdCandidate(Strategy.FAKE_BORDER, by_class["fake"], valid, note),
        ThresholdCandidate(Strategy.LIVE_BORDER, by_class["live"], valid, note),
    )


# --- equal error plateau ------------------------------------------------------


@dataclass(frozen=True)
class AcerSweep:
    """Candidate sweep for the equal-error threshold.

    Candidate ``i`` stands for every threshold in ``(bounds[i][0], bounds[i][1])``
    and ``objective[i]`` is ``|a/N - b/M| * N * M`` with ``a`` the lower-class
    samples above and ``b`` the upper-class samples below that range.  The
    outer candidates collapse to the global extremes.
    """

    values: np.ndarray
    bounds: np.ndarray
    objective: np.ndarray


def acer_sweep(data: LabeledDataset) -> AcerSweep:
    lower, upper = data.lower.scores, data.upper.scores
    n, m = lower.size, upper.size
    distinct = np.unique(np.concatenate([lower, upper]))
    # counts for thresholds just above each distinct value
    lower_above = n - np.searchsorted(lower, distinct, side="right")
    upper_below = np.searchsorted(upper, distinct, side="right")
    a = np.concatenate([[n], lower_above]).astype(object)
    b = np.concatenate([[0], upper_below]).astype(object)
    objective = np.array([abs(ai * m - bi * n) for ai, bi in zip(a, b)], dtype=object)

    lo = np.concatenate([[distinct[0]], distinct])
    hi = np.concatenate([distinct, [distinct[-1]]])
    values = np.concatenate(
        [[math.nextafter(distinct[0], -math.inf)], (distinct[:-1] + distinct[1:]) / 2, [math.nextafter(distinct[-1], math.inf)]]
    )
    return AcerSweep(values, np.stack([lo, hi], axis=1), objective)


def threshold_acer(data: LabeledDataset) -> tuple[ThresholdCandidate, ThresholdCandidate, ThresholdCandidate]:
    """Plateau of thresholds equalizing the two classes' error fractions.

    Returns ``(left, mid, right)``: the infimum and supremum of the minimizing
    region and their midpoint.  On separable data the plateau is exactly the
    gap between the classes.
    """
    sweep = acer_sweep(data)
    best = min(sweep.objective)
    hits = [i for i, v in enumerate(sweep.objective) if v == best]
    left = float(sweep.bounds[hits[0], 0])
    right = float(sweep.bounds[hits[-1], 1])
    mid = (left + right) / 2
    return (
        ThresholdCandidate(Strategy.ACER_LEFT, left),
        ThresholdCandidate(Strategy.ACER_MID, mid),
        ThresholdCandidate(Strategy.ACER_RIGHT, right),
    )


# --- distance balance -----------------------------------------------------------


def threshold_balance(data: LabeledDataset) -> ThresholdCandidate:
    """Threshold at which summed distances from both classes balance.

    ``sum(T - lower) = sum(upper - T)`` rearranges to ``T = pooled mean``.  The
    value is clamped into the inter-class gap when the classes separate; with
    overlapping classes the pooled mean is returned and flagged.
    """
    pooled = data.lower.scores.tolist() + data.upper.scores.tolist()
    t = math.fsum(pooled) / len(pooled)
    gap_lo, gap_hi = data.lower.max, data.upper.min
    if data.overlap:
        return ThresholdCandidate(Strategy.BALANCE_POINT, t, True, Note.CLASSES_OVERLAP)
    if t < gap_lo:
        return ThresholdCandidate(Strategy.BALANCE_POINT, gap_lo, True, Note.CLAMPED_TO_GAP)
    if t > gap_hi:
        return ThresholdCandidate(Strategy.BALANCE_POINT, gap_hi, True, Note.CLAMPED_TO_GAP)
    return ThresholdCandidate(Strategy.BALANCE_POINT, t)


# --- domain circle crossing ---------------------------------------------------------


def threshold_cross(dom_lower: DomainSummary, dom_upper: DomainSummary) -> ThresholdCandidate:
    """Axis coordinate where the two domain circles cross.

    Each domain is a circle centered on the score axis with its domain
    radius.  For properly intersecting circles the common chord meets the
    axis at ``c_L + (d**2 + r_L**2 - r_U**2) / (2 d)`` (law of cosines).
    Disjoint circles fall back to the middle of the empty stretch between
    them; nested circles fall back to the middle of the two centers and
    are marked invalid.
    """
    c_l, r_l = dom_lower.center.value, dom_lower.radius
    c_u, r_u = dom_upper.center.value, dom_upper.radius
    if c_l > c_u:
        raise ValueError(f"lower domain center {c_l!r} lies above upper center {c_u!r}")
    d = c_u - c_l
    if d <= abs(r_l - r_u):
        return ThresholdCandidate(Strategy.CROSS_POINT, c_l + d / 2, False, Note.CIRCLES_NESTED)
    if d >= r_l + r_u:
        a, b = c_l + r_l, c_u - r_u
        return ThresholdCandidate(Strategy.CROSS_POINT, a + (b - a) / 2, True, Note.CIRCLES_DISJOINT)
    return ThresholdCandidate(Strategy.CROSS_POINT, c_l + (d * d + r_l * r_l - r_u * r_u) / (2 * d))


# --- metrics ------------------------------------------------------------------


def _genuine_side_counts(scores: np.ndarray, thresholds, polarity: Polarity, tie_rule: TieRule):
    """How many of ``scores`` fall on the genuine side of each threshold."""
    include_equal = TieRule(tie_rule) is TieRule.EQUAL_IS_GENUINE
    if polarity is Polarity.GENUINE_LOW:
        return np.searchsorted(scores, thresholds, side="right" if include_equal else "left")
    return scores.size - np.searchsorted(scores, thresholds, side="left" if include_equal else "right")


def evaluate_threshold(
    data: LabeledDataset, threshold: float, tie_rule: TieRule | str = TieRule.EQUAL_IS_GENUINE
) -> ThresholdEvaluation:
    """Confusion counts and APCER/BPCER/ACER at ``threshold``.

    A score strictly on the attack side of the threshold is classified as an
    attack; a score equal to it follows ``tie_rule``.
    """
    threshold = float(threshold)
    if not math.isfinite(threshold):
        raise ValueError(f"threshold must be finite, got {threshold!r}")
    genuine, attack = data.genuine.scores, data.attack.scores
    tp = int(_genuine_side_counts(genuine, threshold, data.polarity, tie_rule))
    fp = int(_genuine_side_counts(attack, threshold, data.polarity, tie_rule))
    fn = genuine.size - tp
    tn = attack.size - fp
    apcer = fp / (tn + fp)
    bpcer = fn / (fn + tp)
    return ThresholdEvaluation(
        threshold=threshold,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        apcer=apcer,
        bpcer=bpcer,
        acer=(apcer + bpcer) / 2,
        fpr=apcer,
        tpr=tp / (tp + fn),
    )


@dataclass(frozen=True)
class RocCurve:
    points: list[tuple[float, float, float]]
    auc: float


def roc_sweep(data: LabeledDataset, tie_rule: TieRule | str = TieRule.EQUAL_IS_GENUINE) -> RocCurve:
    """ROC points ``(threshold, fpr, tpr)`` at every distinct score and both sentinels.

    Points are ordered by increasing FPR; the area uses the trapezoid rule,
    which credits tied genuine/attack pairs with one half.  The area is summed
    on integer counts and divided once, so it is the correctly rounded
    pairwise fraction.
    """
    distinct = np.unique(np.concatenate([data.lower.scores, data.upper.scores]))
    thresholds = np.concatenate(
        [[math.nextafter(distinct[0], -math.inf)], distinct, [math.nextafter(distinct[-1], math.inf)]]
    )
    if data.polarity is Polarity.GENUINE_HIGH:
        thresholds = thresholds[::-1]
    genuine, attack = data.genuine.scores, data.attack.scores
    tp = _genuine_side_counts(genuine, thresholds, data.polarity, tie_rule).astype(np.int64)
    fp = _genuine_side_counts(attack, thresholds, data.polarity, tie_rule).astype(np.int64)
    twice_area = int(np.sum(np.diff(fp) * (tp[1:] + tp[:-1])))
    auc = twice_area / (2 * genuine.size * attack.size)
    tpr, fpr = tp / genuine.size, fp / attack.size
    points = [(float(t), float(f), float(p)) for t, f, p in zip(thresholds, fpr, tpr)]
    return RocCurve(points, auc)


# --- report -------------------------------------------------------------------

REPORT_ORDER = (
    Strategy.FAKE_BORDER,
    Strategy.LIVE_BORDER,
    Strategy.CROSS_POINT,
    Strategy.BALANCE_POINT,
    Strategy.ACER_LEFT,
    Strategy.ACER_RIGHT,
)

STRATEGY_GROUPS = {
    "all": REPORT_ORDER,
    "acer": (Strategy.ACER_LEFT, Strategy.ACER_MID, Strategy.ACER_RIGHT),
    "balance": (Strategy.BALANCE_POINT,),
    "cross": (Strategy.CROSS_POINT,),
    "borders": (Strategy.FAKE_BORDER, Strategy.LIVE_BORDER),
}


@dataclass(frozen=True)
class ReportRow:
    candidate: ThresholdCandidate
    train: ThresholdEvaluation
    dev: ThresholdEvaluation | None = None


def all_candidates(data: LabeledDataset, center: CenterMethod | str = CenterMethod.BALANCE) -> dict:
    """Every strategy's threshold on ``data``, keyed by :class:`Strategy`."""
    fake, live = threshold_borders(data)
    left, mid, right = threshold_acer(data)
    doms = sorted(
        (summarize_domain(data.lower, center), summarize_domain(data.upper, center)),
        key=lambda dom: dom.center.value,
    )
    found = [fake, live, threshold_cross(*doms), threshold_balance(data), left, right, mid]
    return {c.strategy: c for c in found}


def threshold_report(
    train: LabeledDataset,
    dev: LabeledDataset | None = None,
    strategies: Sequence[Strategy] | str = "all",
    center: CenterMethod | str = CenterMethod.BALANCE,
    tie_rule: TieRule | str = TieRule.EQUAL_IS_GENUINE,
) -> list[ReportRow]:
    """Thresholds chosen on ``train``, each evaluated on ``train`` and ``dev``."""
    if dev is not None and dev.polarity is not train.polarity:
        raise ValueError("train and dev datasets must share a polarity")
    if isinstance(strategies, str):
        strategies = STRATEGY_GROUPS[strategies]
    found = all_candidates(train, center)
    rows = []
    for strategy in strategies:
        cand = found[Strategy(strategy)]
        rows.append(
            ReportRow(
                cand,
                evaluate_threshold(train, cand.value, tie_rule),
                None if dev is None else evaluate_threshold(dev, cand.value, tie_rule),
            )
        )
    return rows

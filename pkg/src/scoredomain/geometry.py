"""Radius, Normalize and Density of a class's prediction domain.

Radius is half of the larger one-sided extent around the center (the
halving is deliberate and kept as published).  Normalize is the ratio of the
lower to the upper extent; Density is the mean absolute deviation from the
center in units of Radius and therefore lies in ``[0, 2]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from .centers import CenterMethod, CenterResult, compute_center
from .model import ClassScores

ONE_SIDED = "one-sided"
"""Normalize sentinel for a center sitting on the class maximum."""

NormalizeValue = Union[float, str]

EXPANDED = "domain expanded"
COHESIVE = "domain more cohesive"


def _check_order(center: float, lo: float, hi: float) -> None:
    if not lo <= center <= hi:
        raise ValueError(f"center {center!r} outside [{lo!r}, {hi!r}]")


def radius(center: float, lo: float, hi: float) -> float:
    _check_order(center, lo, hi)
    return max(center - lo, hi - center) / 2


def normalize(center: float, lo: float, hi: float) -> NormalizeValue:
    """``(center - lo) / (hi - center)``, or :data:`ONE_SIDED` when ``hi == center``."""
    _check_order(center, lo, hi)
    if hi == center:
        return ONE_SIDED
    return (center - lo) / (hi - center)


def density(scores: ClassScores, center: float, radius: float) -> float:
    if radius == 0:
        return 0.0
    mad = math.fsum(abs(v - center) for v in scores.scores.tolist())
    value = mad / radius / scores.n
    # mean deviation never exceeds the maximum deviation, 2 * radius
    return min(value, 2.0)


@dataclass(frozen=True)
class DomainSummary:
    center: CenterResult
    radius: float
    normalize: NormalizeValue
    density: float
    min: float
    max: float
    n: int

    @property
    def one_sided(self) -> bool:
        return self.normalize == ONE_SIDED

    def as_dict(self) -> dict:
        return {
            "center": self.center.value,
            "center_method": self.center.method.value,
            "selected_index": self.center.selected_index,
            "imbalance": self.center.imbalance,
            "radius": self.radius,
            "normalize": self.normalize,
            "density": self.density,
            "min": self.min,
            "max": self.max,
            "n": self.n,
        }


def summarize_domain(scores: ClassScores, method: CenterMethod | str = CenterMethod.BALANCE) -> DomainSummary:
    center = compute_center(scores, method)
    c, lo, hi = center.value, scores.min, scores.max
    r = radius(c, lo, hi)
    return DomainSummary(
        center=center,
        radius=r,
        normalize=normalize(c, lo, hi),
        density=density(scores, c, r),
        min=lo,
        max=hi,
        n=scores.n,
    )


@dataclass(frozen=True)
class ComparisonRow:
    """Before/after Radius, Normalize, Density of one class, with deltas.

    ``normalize_delta`` is None when either side is one-sided.
    """

    label: str
    before: DomainSummary
    after: DomainSummary
    radius_delta: float
    normalize_delta: float | None
    density_delta: float
    flags: tuple[str, ...] = field(default=())


def compare_domains(before: DomainSummary, after: DomainSummary, label: str = "") -> ComparisonRow:
    if before.one_sided or after.one_sided:
        n_delta = None
    else:
        n_delta = after.normalize - before.normalize
    r_delta = after.radius - before.radius
    d_delta = after.density - before.density
    flags = []
    if r_delta > 0:
        flags.append(EXPANDED)
    if d_delta < 0:
        flags.append(COHESIVE)
    return ComparisonRow(label, before, after, r_delta, n_delta, d_delta, tuple(flags))

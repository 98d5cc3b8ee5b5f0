"""Reproducible Gaussian score samples.

The generator is pinned so that any implementation can reproduce the exact
bytes:

* PRNG: SplitMix64.  ``state`` starts at ``seed``; each draw adds
  ``0x9E3779B97F4A7C15`` to the state (mod 2**64) and returns
  ``z ^ (z >> 31)`` after ``z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`` and
  ``z = (z ^ (z >> 27)) * 0x94D049BB133111EB`` (all mod 2**64).
* Uniform double: ``(draw >> 11) * 2**-53`` in ``[0, 1)``.
* Gaussian: Box-Muller on consecutive uniform pairs ``(a, b)`` with
  ``u1 = 1 - a`` in ``(0, 1]`` and ``u2 = b``, emitting
  ``sqrt(-2 ln u1) cos(2 pi u2)`` then ``sqrt(-2 ln u1) sin(2 pi u2)``.
  An odd ``n`` drops the last sine.
* Value: ``mean + std * z``, saturated into the clamp interval if one is
  given, then sorted ascending.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .model import ClassScores

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(seed: int) -> Iterator[int]:
    state = seed & MASK64
    while True:
        state = (state + GOLDEN_GAMMA) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def uniforms(seed: int) -> Iterator[float]:
    for draw in splitmix64(seed):
        yield (draw >> 11) * 2.0**-53


def standard_normals(seed: int, n: int) -> list[float]:
    out: list[float] = []
    stream = uniforms(seed)
    while len(out) < n:
        u1 = 1.0 - next(stream)
        u2 = next(stream)
        mag = math.sqrt(-2.0 * math.log(u1))
        out.append(mag * math.cos(2.0 * math.pi * u2))
        out.append(mag * math.sin(2.0 * math.pi * u2))
    return out[:n]


@dataclass(frozen=True)
class SynthSpec:
    n: int = 500
    mean: float = 0.5
    std_dev: float = 0.1
    seed: int = 2024
    clamp: tuple[float, float] | None = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not math.isfinite(self.mean):
            raise ValueError("mean must be finite")
        if not (math.isfinite(self.std_dev) and self.std_dev >= 0):
            raise ValueError(f"std_dev must be finite and >= 0, got {self.std_dev!r}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.clamp is not None:
            lo, hi = self.clamp
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ValueError(f"clamp must be a finite interval lo <= hi, got {self.clamp!r}")
            object.__setattr__(self, "clamp", (float(lo), float(hi)))


def generate(spec: SynthSpec) -> ClassScores:
    """Draw ``spec.n`` Gaussian scores; identical specs give identical output."""
    values = np.array([spec.mean + spec.std_dev * z for z in standard_normals(spec.seed, spec.n)])
    if spec.clamp is not None:
        values = np.clip(values, *spec.clamp)
    return ClassScores(np.sort(values, kind="stable"))

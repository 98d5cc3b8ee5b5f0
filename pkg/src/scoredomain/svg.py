"""Deterministic SVG diagrams of prediction domains on a 1-D score axis.

Each class is drawn as a circle centered on the axis at its domain center,
with its domain radius mapped through the same linear scale as the axis.
Because the domain radius is half of the larger one-sided extent, the circle
covers half the span from the center to the farthest sample.  Concentric
rings mark the nearest-rank quantiles of ``|score - center| / 2`` so the
outermost ring (fraction 1.0) coincides with the domain circle.

Coordinates are printed with four decimals and nothing depends on time or
environment, so equal specs render to equal bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .geometry import ONE_SIDED, DomainSummary
from .model import ClassScores
from .thresholds import Strategy, ThresholdCandidate

PAD = 20.0
TITLE_H = 24.0
LEGEND_LINE_H = 16.0
TICK_COUNT = 5
PANEL_GAP = 40.0
FONT = "DejaVu Sans, Arial, sans-serif"

CLASS_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


@dataclass(frozen=True)
class DomainStyle:
    name: str
    color: str = "#1f77b4"
    fill_opacity: float = 0.12


@dataclass(frozen=True)
class LineStyle:
    color: str = "#2ca02c"
    dash: str | None = None
    width: float = 1.5


THRESHOLD_STYLES = {
    Strategy.FAKE_BORDER: LineStyle("#2ca02c"),
    Strategy.LIVE_BORDER: LineStyle("#2ca02c"),
    Strategy.CROSS_POINT: LineStyle("#9467bd", "6,3"),
    Strategy.BALANCE_POINT: LineStyle("#ff7f0e"),
    Strategy.ACER_LEFT: LineStyle("#7f7f7f", "2,3"),
    Strategy.ACER_RIGHT: LineStyle("#7f7f7f", "2,3"),
    Strategy.ACER_MID: LineStyle("#7f7f7f", "8,3"),
}


@dataclass(frozen=True)
class PanelDomain:
    summary: DomainSummary
    style: DomainStyle
    scores: ClassScores | None = None


@dataclass(frozen=True)
class RenderSpec:
    """Everything a diagram depends on.

    ``height`` is a minimum: the canvas grows so the largest circle fits.
    ``rings`` are sample fractions in ``(0, 1]``; rings and rug ticks need
    the per-class scores on each :class:`PanelDomain`.
    """

    width: int = 800
    height: int = 300
    viewport: tuple[float, float] = (0.0, 1.0)
    domains: tuple[PanelDomain, ...] = ()
    thresholds: tuple[tuple[ThresholdCandidate, LineStyle], ...] = ()
    rug: bool = True
    rings: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)
    legend: bool = True
    title: str = ""
    font_size: int = 12

    def __post_init__(self):
        lo, hi = self.viewport
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"degenerate viewport {self.viewport!r}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("width and height must be positive")
        for q in self.rings:
            if not 0 < q <= 1:
                raise ValueError(f"ring fraction {q!r} outside (0, 1]")
        object.__setattr__(self, "viewport", (float(lo), float(hi)))
        object.__setattr__(self, "domains", tuple(self.domains))
        object.__setattr__(self, "thresholds", tuple(self.thresholds))
        object.__setattr__(self, "rings", tuple(sorted(float(q) for q in self.rings)))

    @property
    def scale(self) -> float:
        lo, hi = self.viewport
        return self.width / (hi - lo)

    def x(self, score: float) -> float:
        return (score - self.viewport[0]) * self.scale


def _f(v: float) -> str:
    if not math.isfinite(v):
        raise ValueError(f"non-finite coordinate {v!r}")
    return f"{v + 0.0:.4f}"


def _g(v) -> str:
    if isinstance(v, str):
        return "n/a" if v == ONE_SIDED else v
    return format(v, ".6g")


def ring_radii(scores: ClassScores, center: float, fractions) -> list[float]:
    """Nearest-rank quantiles of ``|score - center| / 2`` at each fraction."""
    dev = np.sort(np.abs(scores.scores - center))
    n = dev.size
    out = []
    for q in fractions:
        k = max(math.ceil(round(q * n, 9)), 1) - 1
        out.append(float(dev[k]) / 2)
    return out


def _warning(x: float, y: float) -> str:
    pts = f"{_f(x)},{_f(y - 7)} {_f(x - 6)},{_f(y + 5)} {_f(x + 6)},{_f(y + 5)}"
    return f'<polygon class="warning" points="{pts}" fill="#ffcc00" stroke="#000000" stroke-width="0.5"/>'


def _clamped_x(spec: RenderSpec, score: float) -> tuple[float, bool]:
    x = spec.x(score)
    if 0 <= x <= spec.width:
        return x, False
    return min(max(x, 0.0), float(spec.width)), True


@dataclass
class _Layout:
    title_h: float
    plot_h: float
    legend_h: float

    @property
    def total(self) -> float:
        return self.title_h + self.plot_h + self.legend_h


def _layout(spec: RenderSpec) -> _Layout:
    max_r = max((d.summary.radius * spec.scale for d in spec.domains), default=0.0)
    plot_h = max(float(spec.height), 2 * (max_r + PAD) + 2 * spec.font_size)
    lines = len(spec.domains) + len(spec.thresholds)
    legend_h = (lines * LEGEND_LINE_H + PAD) if spec.legend and lines else 0.0
    return _Layout(TITLE_H if spec.title else 0.0, plot_h, legend_h)


def _merge(a: _Layout, b: _Layout) -> _Layout:
    return _Layout(max(a.title_h, b.title_h), max(a.plot_h, b.plot_h), max(a.legend_h, b.legend_h))


def _text(x: float, y: float, body: str, size: int, anchor: str = "start", extra: str = "") -> str:
    return (
        f'<text x="{_f(x)}" y="{_f(y)}" font-family="{FONT}" font-size="{size}" '
        f'text-anchor="{anchor}"{extra}>{escape(body)}</text>'
    )


def _panel(spec: RenderSpec, lay: _Layout) -> list[str]:
    fs = spec.font_size
    w = float(spec.width)
    top = lay.title_h
    bottom = top + lay.plot_h
    axis_y = top + lay.plot_h / 2
    out = [f'<rect class="frame" x="0.0000" y="{_f(top)}" width="{_f(w)}" height="{_f(lay.plot_h)}" fill="#ffffff" stroke="#cccccc"/>']
    if spec.title:
        out.append(_text(w / 2, fs + 4, spec.title, fs + 2, "middle"))

    for dom in spec.domains:
        s, st = dom.summary, dom.style
        cx, off = _clamped_x(spec, s.center.value)
        r = s.radius * spec.scale
        out.append(
            f'<circle class="domain" cx="{_f(cx)}" cy="{_f(axis_y)}" r="{_f(r)}" '
            f'fill="{st.color}" fill-opacity="{_f(st.fill_opacity)}" stroke="{st.color}" stroke-width="1.5"/>'
        )
        if dom.scores is not None and spec.rings:
            for rr in ring_radii(dom.scores, s.center.value, spec.rings):
                out.append(
                    f'<circle class="ring" cx="{_f(cx)}" cy="{_f(axis_y)}" r="{_f(rr * spec.scale)}" '
                    f'fill="none" stroke="{st.color}" stroke-width="0.75" stroke-dasharray="3,2"/>'
                )
        out.append(f'<circle class="center" cx="{_f(cx)}" cy="{_f(axis_y)}" r="3.0000" fill="{st.color}"/>')
        if off:
            out.append(_warning(cx, axis_y - 10))

    # axis drawn over the circles
    out.append(f'<line class="axis" x1="0.0000" y1="{_f(axis_y)}" x2="{_f(w)}" y2="{_f(axis_y)}" stroke="#000000" stroke-width="1"/>')
    lo, hi = spec.viewport
    for i in range(TICK_COUNT):
        v = lo + (hi - lo) * i / (TICK_COUNT - 1)
        x = w * i / (TICK_COUNT - 1)
        anchor = "start" if i == 0 else "end" if i == TICK_COUNT - 1 else "middle"
        out.append(f'<line class="tick" x1="{_f(x)}" y1="{_f(axis_y)}" x2="{_f(x)}" y2="{_f(axis_y + 5)}" stroke="#000000"/>')
        out.append(_text(x, bottom - 4, _g(v), fs, anchor))

    if spec.rug:
        for i, dom in enumerate(spec.domains):
            if dom.scores is None:
                continue
            y0 = axis_y + 2 + 8 * i
            ticks = []
            for v in np.unique(dom.scores.scores).tolist():
                x = spec.x(v)
                if 0 <= x <= w:
                    ticks.append(f"M{_f(x)} {_f(y0)}v6")
            if ticks:
                out.append(f'<path class="rug" d="{" ".join(ticks)}" stroke="{dom.style.color}" stroke-width="0.5" fill="none"/>')

    for i, (cand, style) in enumerate(spec.thresholds):
        x, off = _clamped_x(spec, cand.value)
        dash = f' stroke-dasharray="{style.dash}"' if style.dash else ""
        out.append(
            f'<line class="threshold" x1="{_f(x)}" y1="{_f(top)}" x2="{_f(x)}" y2="{_f(bottom)}" '
            f'stroke="{style.color}" stroke-width="{_f(style.width)}"{dash}/>'
        )
        anchor = "end" if x > w / 2 else "start"
        nudge = -3 if anchor == "end" else 3
        out.append(_text(x + nudge, top + fs + 2 + i * (fs + 2), cand.strategy.value, fs - 2, anchor, f' fill="{style.color}"'))
        if off:
            out.append(_warning(x, top + 10))

    if spec.legend:
        y = bottom + PAD / 2 + fs
        for dom in spec.domains:
            s = dom.summary
            body = (
                f"{dom.style.name} [{s.center.method.value}] center={_g(s.center.value)} "
                f"R={_g(s.radius)} N={_g(s.normalize)} D={_g(s.density)} n={s.n}"
            )
            out.append(f'<rect x="4.0000" y="{_f(y - fs + 2)}" width="10.0000" height="10.0000" fill="{dom.style.color}"/>')
            out.append(_text(20, y, body, fs))
            y += LEGEND_LINE_H
        for cand, style in spec.thresholds:
            note = "" if cand.note.value == "ok" else f" ({cand.note.value})"
            out.append(f'<line x1="4.0000" y1="{_f(y - fs / 2 + 1)}" x2="14.0000" y2="{_f(y - fs / 2 + 1)}" stroke="{style.color}" stroke-width="2"/>')
            out.append(_text(20, y, f"{cand.strategy.value} = {_g(cand.value)}{note}", fs))
            y += LEGEND_LINE_H
    return out


def _document(width: float, height: float, body: list[str], metadata: str | None) -> bytes:
    head = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
    ]
    if metadata is not None:
        head.append(f"<metadata>{escape(metadata)}</metadata>")
    return ("\n".join(head + body + ["</svg>"]) + "\n").encode("utf-8")


def render(spec: RenderSpec, metadata: str | None = None) -> bytes:
    """Render one panel to SVG bytes."""
    lay = _layout(spec)
    return _document(spec.width, lay.total, _panel(spec, lay), metadata)


def render_comparison(before: RenderSpec, after: RenderSpec, metadata: str | None = None) -> bytes:
    """Two panels side by side with a shared axis scale."""
    if before.viewport != after.viewport or before.width != after.width:
        raise ValueError("comparison panels must share viewport and width")
    lay = _merge(_layout(before), _layout(after))
    body = []
    for i, spec in enumerate((before, after)):
        offset = i * (spec.width + PANEL_GAP)
        body.append(f'<g class="panel" transform="translate({_f(offset)},0)">')
        body.extend(_panel(spec, lay))
        body.append("</g>")
    return _document(2 * before.width + PANEL_GAP, lay.total, body, metadata)


def default_styles(names) -> list[DomainStyle]:
    return [DomainStyle(name, CLASS_COLORS[i % len(CLASS_COLORS)]) for i, name in enumerate(names)]


def threshold_lines(candidates) -> tuple[tuple[ThresholdCandidate, LineStyle], ...]:
    return tuple((c, THRESHOLD_STYLES[c.strategy]) for c in candidates)

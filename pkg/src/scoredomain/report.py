"""Plain-text, CSV and JSON rendering of tabular reports.

Every report starts with the tool version and the resolved run
configuration.  Text output prints numbers with 6 significant digits, CSV
and JSON carry full precision.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import __version__
from .geometry import ONE_SIDED, ComparisonRow, DomainSummary
from .thresholds import ReportRow, RocCurve

TOOL = "scoredomain"
FORMATS = ("text", "csv", "json")


@dataclass
class Report:
    command: str
    config: dict
    columns: Sequence[str]
    rows: list[Sequence[Any]]
    extra: dict = field(default_factory=dict)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _cell_text(v) -> str:
    if v is None:
        return "-"
    if v == ONE_SIDED:
        return "n/a"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return format(v, ".6g")
    return str(v)


def _cell_csv(v) -> str:
    if v is None:
        return ""
    if v == ONE_SIDED:
        return "n/a"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def header_lines(command: str, config: dict) -> list[str]:
    return [
        f"# {TOOL} {__version__} {command}",
        "# config: " + json.dumps(config, sort_keys=True),
    ]


def format_report(report: Report, fmt: str) -> str:
    if fmt == "json":
        payload = {
            "tool": TOOL,
            "version": __version__,
            "command": report.command,
            "config": report.config,
            "columns": list(report.columns),
            "rows": [{c: _json_value(v) for c, v in zip(report.columns, row)} for row in report.rows],
        }
        payload.update(report.extra)
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"

    lines = header_lines(report.command, report.config)
    extras = [f"# {k}: {_cell_text(v) if fmt == 'text' else _cell_csv(v)}" for k, v in report.extra.items()]
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(report.columns)
        writer.writerows([_cell_csv(v) for v in row] for row in report.rows)
        return "\n".join(lines + extras) + "\n" + out.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")

    cells = [list(report.columns)] + [[_cell_text(v) for v in row] for row in report.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(report.columns))]
    body = []
    for k, row in enumerate(cells):
        parts = [c.ljust(w) if i < 2 or k == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))]
        body.append("  ".join(parts).rstrip())
    return "\n".join(lines + extras + body) + "\n"


# --- report builders ----------------------------------------------------------

SUMMARY_COLUMNS = ("class", "variant", "radius", "normalize", "density", "center", "center_method", "min", "max", "n")


def summary_row(name: str, variant: str, s: DomainSummary) -> list:
    return [name, variant, s.radius, s.normalize, s.density, s.center.value, s.center.method.value, s.min, s.max, s.n]


def analyze_report(config: dict, summaries: list[tuple[str, str, DomainSummary]]) -> Report:
    return Report("analyze", config, SUMMARY_COLUMNS, [summary_row(*item) for item in summaries])


COMPARE_COLUMNS = ("class", "variant", "radius", "normalize", "density", "flags")


def compare_report(config: dict, rows: list[ComparisonRow]) -> Report:
    out = []
    for row in rows:
        out.append([row.label, "before", row.before.radius, row.before.normalize, row.before.density, ""])
        out.append([row.label, "after", row.after.radius, row.after.normalize, row.after.density, ""])
        out.append([row.label, "delta", row.radius_delta, row.normalize_delta, row.density_delta, "; ".join(row.flags)])
    return Report("compare", config, COMPARE_COLUMNS, out)


def thresholds_report(config: dict, rows: list[ReportRow]) -> Report:
    with_dev = any(r.dev is not None for r in rows)
    columns = ["strategy", "note", "threshold", "valid", "train_fpr", "train_tpr", "train_acer"]
    if with_dev:
        columns += ["dev_fpr", "dev_tpr", "dev_acer"]
    out = []
    for r in rows:
        c = r.candidate
        row = [c.strategy.value, c.note.value, c.value, c.valid, r.train.fpr, r.train.tpr, r.train.acer]
        if with_dev:
            row += [r.dev.fpr, r.dev.tpr, r.dev.acer]
        out.append(row)
    return Report("thresholds", config, columns, out)


def roc_report(config: dict, curve: RocCurve) -> Report:
    return Report("roc", config, ("threshold", "fpr", "tpr"), [list(p) for p in curve.points], {"auc": curve.auc})

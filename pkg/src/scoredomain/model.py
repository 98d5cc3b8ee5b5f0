"""Score records, per-class score vectors, and file ingestion.

Input files carry one sample per row (``id,score,label``).  Labels are
mapped through a :class:`LabelMap` to the lower or upper side of the
score axis; which semantic class (live or fake) sits low is the
dataset *polarity* and is always recorded on the dataset.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np


class DataError(ValueError):
    """Input data that cannot be turned into a valid dataset.

    ``line`` is the 1-based physical line for CSV input and the 1-based
    record index for JSON input.
    """

    def __init__(self, message: str, source: str = "<input>", line: int | None = None):
        self.message = message
        self.source = source
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"{source}: {message}{where}")


class Polarity(str, Enum):
    GENUINE_LOW = "genuine-low"
    GENUINE_HIGH = "genuine-high"


class Side(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class LabelMap:
    """Maps label tokens in input files to sides of the score axis."""

    live: str = "live"
    fake: str = "fake"
    polarity: Polarity = Polarity.GENUINE_LOW

    def __post_init__(self):
        if self.live == self.fake:
            raise ValueError("live and fake label tokens must differ")
        object.__setattr__(self, "polarity", Polarity(self.polarity))

    def side(self, token: str) -> Side | None:
        genuine_low = self.polarity is Polarity.GENUINE_LOW
        if token == self.live:
            return Side.LOWER if genuine_low else Side.UPPER
        if token == self.fake:
            return Side.UPPER if genuine_low else Side.LOWER
        return None

    def token(self, side: Side) -> str:
        return self.live if class_name(side, self.polarity) == "live" else self.fake


def class_name(side: Side, polarity: Polarity) -> str:
    """Semantic class ("live" or "fake") occupying ``side`` under ``polarity``."""
    lower_is_live = Polarity(polarity) is Polarity.GENUINE_LOW
    if Side(side) is Side.LOWER:
        return "live" if lower_is_live else "fake"
    return "fake" if lower_is_live else "live"


@dataclass(frozen=True)
class ScoreRecord:
    id: str
    score: float
    side: Side

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise ValueError(f"non-finite score {self.score!r}")
        object.__setattr__(self, "side", Side(self.side))


@dataclass(frozen=True, eq=False)
class ClassScores:
    """Ascending-sorted, finite, non-empty scores of one class.

    The backing array is read-only; build instances with :func:`sort_scores`
    unless the input is already sorted.
    """

    scores: np.ndarray

    def __post_init__(self):
        arr = np.array(self.scores, dtype=np.float64, copy=True).reshape(-1)
        if arr.size == 0:
            raise ValueError("a class needs at least one score")
        if not np.all(np.isfinite(arr)):
            raise ValueError("scores must be finite")
        if np.any(arr[1:] < arr[:-1]):
            raise ValueError("scores must be sorted ascending")
        arr.setflags(write=False)
        object.__setattr__(self, "scores", arr)

    @property
    def n(self) -> int:
        return int(self.scores.size)

    @property
    def min(self) -> float:
        return float(self.scores[0])

    @property
    def max(self) -> float:
        return float(self.scores[-1])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other):
        if not isinstance(other, ClassScores):
            return NotImplemented
        return np.array_equal(self.scores, other.scores)

    def __hash__(self):
        return hash(self.scores.tobytes())

    def __repr__(self):
        return f"ClassScores(n={self.n}, min={self.min!r}, max={self.max!r})"


def sort_scores(raw: Iterable[float]) -> ClassScores:
    """Sort finite scores ascending (stable) into a :class:`ClassScores`."""
    arr = np.asarray(list(raw) if not isinstance(raw, np.ndarray) else raw, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("cannot sort an empty score vector")
    return ClassScores(np.sort(arr, kind="stable"))


@dataclass(frozen=True)
class LabeledDataset:
    lower: ClassScores
    upper: ClassScores
    polarity: Polarity = Polarity.GENUINE_LOW

    def __post_init__(self):
        object.__setattr__(self, "polarity", Polarity(self.polarity))

    @property
    def genuine(self) -> ClassScores:
        return self.lower if self.polarity is Polarity.GENUINE_LOW else self.upper

    @property
    def attack(self) -> ClassScores:
        return self.upper if self.polarity is Polarity.GENUINE_LOW else self.lower

    @property
    def lower_name(self) -> str:
        return class_name(Side.LOWER, self.polarity)

    @property
    def upper_name(self) -> str:
        return class_name(Side.UPPER, self.polarity)

    @property
    def pooled(self) -> np.ndarray:
        return np.sort(np.concatenate([self.lower.scores, self.upper.scores]), kind="stable")

    @property
    def separable(self) -> bool:
        return self.lower.max < self.upper.min

    @property
    def overlap(self) -> bool:
        """True when the gap ``[max(lower), min(upper)]`` is empty."""
        return self.lower.max > self.upper.min


def _parse_score(text, source: str, line: int) -> float:
    if isinstance(text, bool) or not isinstance(text, (int, float, str)):
        raise DataError(f"score must be a number, got {text!r}", source, line)
    if isinstance(text, str):
        stripped = text.strip()
        if not stripped or "_" in stripped:
            raise DataError(f"malformed score {text!r}", source, line)
        try:
            value = float(stripped)
        except ValueError:
            raise DataError(f"malformed score {text!r}", source, line) from None
    else:
        value = float(text)
    if not math.isfinite(value):
        raise DataError(f"non-finite score {text!r}", source, line)
    return value


def _record(rec_id, score, label, labels: LabelMap, source: str, line: int) -> ScoreRecord:
    value = _parse_score(score, source, line)
    side = labels.side(label) if isinstance(label, str) else None
    if side is None:
        raise DataError(
            f"unknown label token {label!r} (expected {labels.live!r} or {labels.fake!r})",
            source,
            line,
        )
    return ScoreRecord(str(rec_id), value, side)


def _read_csv(text: str, labels: LabelMap, source: str) -> list[ScoreRecord]:
    records = []
    reader = csv.reader(io.StringIO(text))
    seen_data = False
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row) or row[0].lstrip().startswith("#"):
            continue
        cells = [cell.strip() for cell in row]
        if not seen_data and [c.lower() for c in cells] == ["id", "score", "label"]:
            seen_data = True
            continue
        seen_data = True
        if len(cells) != 3:
            raise DataError(f"expected 3 columns (id,score,label), got {len(cells)}", source, line)
        records.append(_record(cells[0], cells[1], cells[2], labels, source, line))
    return records


def _read_json(text: str, labels: LabelMap, source: str) -> list[ScoreRecord]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON: {exc.msg}", source, exc.lineno) from None
    if not isinstance(payload, list):
        raise DataError("JSON input must be an array of records", source)
    records = []
    for k, item in enumerate(payload, start=1):
        if not isinstance(item, dict) or not {"id", "score", "label"} <= item.keys():
            raise DataError("record must be an object with id, score, label", source, k)
        if not isinstance(item["id"], str):
            raise DataError(f"id must be a string, got {item['id']!r}", source, k)
        if isinstance(item["score"], str):
            raise DataError(f"score must be a number, got {item['score']!r}", source, k)
        records.append(_record(item["id"], item["score"], item["label"], labels, source, k))
    return records


def read_records(
    raw: bytes | str, fmt: str, labels: LabelMap = LabelMap(), source: str = "<input>"
) -> list[ScoreRecord]:
    """Parse ``raw`` (CSV or JSON) into score records in file order."""
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DataError(f"input is not UTF-8 ({exc.reason})", source) from None
    raw = raw.lstrip("﻿")
    if fmt == "csv":
        return _read_csv(raw, labels, source)
    if fmt == "json":
        return _read_json(raw, labels, source)
    raise ValueError(f"unknown input format {fmt!r}")


def partition(
    records: Sequence[ScoreRecord],
    polarity: Polarity = Polarity.GENUINE_LOW,
    source: str = "<input>",
) -> LabeledDataset:
    lower = [r.score for r in records if r.side is Side.LOWER]
    upper = [r.score for r in records if r.side is Side.UPPER]
    for side, values in ((Side.LOWER, lower), (Side.UPPER, upper)):
        if not values:
            raise DataError(f"class {class_name(side, polarity)!r} has no samples", source)
    return LabeledDataset(sort_scores(lower), sort_scores(upper), polarity)


def ingest(
    raw: bytes | str, fmt: str, labels: LabelMap = LabelMap(), source: str = "<input>"
) -> LabeledDataset:
    """Parse, validate, and partition labeled scores.

    Raises:
        DataError: on malformed rows, non-finite scores, unknown labels,
            or when either class ends up empty.
    """
    records = read_records(raw, fmt, labels, source)
    return partition(records, labels.polarity, source)


def guess_format(path: str) -> str:
    return "json" if str(path).lower().endswith(".json") else "csv"


def serialize(data: LabeledDataset, fmt: str = "csv", labels: LabelMap | None = None) -> str:
    """Write ``data`` in an ingestible form; ``ingest(serialize(d)) == d``."""
    if labels is None:
        labels = LabelMap(polarity=data.polarity)
    rows = []
    for side, cls in ((Side.LOWER, data.lower), (Side.UPPER, data.upper)):
        token = labels.token(side)
        rows.extend((f"{side.value}-{i}", float(s), token) for i, s in enumerate(cls.scores))
    if fmt == "json":
        return json.dumps([{"id": i, "score": s, "label": t} for i, s, t in rows], indent=1) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown output format {fmt!r}")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "score", "label"])
    writer.writerows((i, repr(s), t) for i, s, t in rows)
    return out.getvalue()

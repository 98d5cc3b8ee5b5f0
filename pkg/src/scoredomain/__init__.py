"""Prediction-score domain analysis and threshold selection for binary classifiers."""

__version__ = "0.1.0"

from .model import (
    ClassScores,
    DataError,
    LabelMap,
    LabeledDataset,
    Polarity,
    ScoreRecord,
    ingest,
    serialize,
    sort_scores,
)
from .centers import (
    CenterMethod,
    CenterResult,
    center_distance_balance,
    center_mean,
    center_median,
    center_weighted_balance,
    compute_center,
)
from .geometry import (
    ONE_SIDED,
    ComparisonRow,
    DomainSummary,
    compare_domains,
    density,
    normalize,
    radius,
    summarize_domain,
)
from .thresholds import (
    Note,
    Strategy,
    ThresholdCandidate,
    ThresholdEvaluation,
    TieRule,
    evaluate_threshold,
    roc_sweep,
    threshold_acer,
    threshold_balance,
    threshold_borders,
    threshold_cross,
    threshold_report,
)
from .synth import SynthSpec, generate

__all__ = [
    "__version__",
    "ClassScores",
    "DataError",
    "LabelMap",
    "LabeledDataset",
    "Polarity",
    "ScoreRecord",
    "ingest",
    "serialize",
    "sort_scores",
    "CenterMethod",
    "CenterResult",
    "center_distance_balance",
    "center_mean",
    "center_median",
    "center_weighted_balance",
    "compute_center",
    "ONE_SIDED",
    "ComparisonRow",
    "DomainSummary",
    "compare_domains",
    "density",
    "normalize",
    "radius",
    "summarize_domain",
    "Note",
    "Strategy",
    "ThresholdCandidate",
    "ThresholdEvaluation",
    "TieRule",
    "evaluate_threshold",
    "roc_sweep",
    "threshold_acer",
    "threshold_balance",
    "threshold_borders",
    "threshold_cross",
    "threshold_report",
    "SynthSpec",
    "generate",
]

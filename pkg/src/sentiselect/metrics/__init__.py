"""Evaluation statistics: BLEU, Pearson's r, Krippendorff's alpha, means."""

from .agreement import AgreementMatrix, krippendorff_alpha_interval
from .bleu import corpus_bleu
from .correlation import PairedSamples, pearson_r
from .report import (
    MEASURES,
    REASON_CODES,
    SUBSETS,
    SYSTEMS,
    MetricsReport,
    aggregate_ratings,
    reason_code_frequencies,
)

__all__ = [
    "AgreementMatrix",
    "MEASURES",
    "MetricsReport",
    "PairedSamples",
    "REASON_CODES",
    "SUBSETS",
    "SYSTEMS",
    "aggregate_ratings",
    "corpus_bleu",
    "krippendorff_alpha_interval",
    "pearson_r",
    "reason_code_frequencies",
]

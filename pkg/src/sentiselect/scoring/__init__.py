"""Sentiment scoring: distributions, scores, and scorer backends."""

from .api import BACKENDS, ScorerSpec, resolve_scorer, score_batch, score_text
from .backends import LexiconScorer, ScoreFileScorer, load_lexicon, load_score_file, write_score_file
from .core import (
    BINARY_CLASS_LABELS,
    BINARY_CLASS_VALUES,
    ClassDistribution,
    SentimentScore,
    binary_distribution,
    expected_class_value,
    softmax,
)
from .ngram import (
    NgramModel,
    NgramScorer,
    TrainingReport,
    load_ngram_model,
    save_ngram_model,
    train_ngram_scorer,
)
from .remote import RemoteScorer

__all__ = [
    "BACKENDS",
    "BINARY_CLASS_LABELS",
    "BINARY_CLASS_VALUES",
    "ClassDistribution",
    "LexiconScorer",
    "NgramModel",
    "NgramScorer",
    "RemoteScorer",
    "ScoreFileScorer",
    "ScorerSpec",
    "SentimentScore",
    "TrainingReport",
    "binary_distribution",
    "expected_class_value",
    "load_lexicon",
    "load_ngram_model",
    "load_score_file",
    "resolve_scorer",
    "save_ngram_model",
    "score_batch",
    "score_text",
    "softmax",
    "train_ngram_scorer",
    "write_score_file",
]

"""Sentiment-aware candidate selection for machine translation.

The pipeline scores the source segment and every n-best candidate
translation on a continuous [0, 1] sentiment scale, then selects the
candidate with the smallest absolute score difference from the source.
The package also ships the matching evaluation toolkit: corpus BLEU,
Pearson correlation with exact p-values, Krippendorff's interval alpha,
rating aggregation, and blinded prompt-sheet generation.
"""

from .errors import (
    BackendUnavailableError,
    ConfigError,
    DataMismatchError,
    EmptyResultError,
    InvalidArgumentError,
    ParseError,
    ScorerError,
    ScoringStageError,
    SentiSelectError,
    UndefinedStatisticError,
    UnsupportedLanguageError,
    ValidationError,
)
from .nbest import (
    Candidate,
    MTBackendClient,
    NBestList,
    SourceSegment,
    parse_jsonl_nbest,
    parse_moses_nbest,
    write_jsonl_nbest,
)
from .rerank import (
    CorpusSummary,
    RerankConfig,
    RerankResult,
    rerank,
    rerank_corpus,
    select_candidate,
    sentiment_divergence,
)
from .scoring import (
    ClassDistribution,
    ScorerSpec,
    SentimentScore,
    expected_class_value,
    resolve_scorer,
    score_batch,
    score_text,
    softmax,
    train_ngram_scorer,
)

__version__ = "0.1.0"

__all__ = [
    "BackendUnavailableError",
    "Candidate",
    "ClassDistribution",
    "ConfigError",
    "CorpusSummary",
    "DataMismatchError",
    "EmptyResultError",
    "InvalidArgumentError",
    "MTBackendClient",
    "NBestList",
    "ParseError",
    "RerankConfig",
    "RerankResult",
    "ScorerError",
    "ScorerSpec",
    "ScoringStageError",
    "SentiSelectError",
    "SentimentScore",
    "SourceSegment",
    "UndefinedStatisticError",
    "UnsupportedLanguageError",
    "ValidationError",
    "expected_class_value",
    "parse_jsonl_nbest",
    "parse_moses_nbest",
    "rerank",
    "rerank_corpus",
    "resolve_scorer",
    "score_batch",
    "score_text",
    "select_candidate",
    "sentiment_divergence",
    "softmax",
    "train_ngram_scorer",
    "write_jsonl_nbest",
]

"""Scorer specs and the uniform text-scoring entry points.

A ScorerSpec names a backend plus its parameters; resolve_scorer turns
it into a live scorer object with immutable state, and score_text /
score_batch work with either form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InvalidArgumentError, ScorerError, UnsupportedLanguageError
from .backends import LexiconScorer, ScoreFileScorer
from .core import SentimentScore, expected_class_value
from .ngram import NgramScorer
from .remote import RemoteScorer

BACKENDS = ("lexicon", "ngram-logistic", "score-file", "remote")

_REQUIRED_PARAMETERS = {
    "lexicon": ("path", "paths"),  # either a single path or a per-language map
    "ngram-logistic": ("path",),
    "score-file": ("path",),
    "remote": ("address",),
}


@dataclass(frozen=True)
class ScorerSpec:
    """Declarative description of a sentiment scorer."""

    backend: str
    language: str
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise InvalidArgumentError(f"unknown backend {self.backend!r}; expected one of {BACKENDS}")
        if not self.language or not self.language.strip():
            raise InvalidArgumentError("language tag must be a nonempty identifier")
        required = _REQUIRED_PARAMETERS[self.backend]
        if not any(key in self.parameters for key in required):
            raise InvalidArgumentError(
                f"backend {self.backend!r} requires one of the parameters {required}"
            )


def resolve_scorer(spec: ScorerSpec):
    """Instantiate the scorer a spec describes. State is loaded once."""
    params = spec.parameters
    if spec.backend == "lexicon":
        if "paths" in params:
            paths = params["paths"]
            if spec.language not in paths:
                raise UnsupportedLanguageError(
                    f"no lexicon configured for language {spec.language!r} "
                    f"(have: {sorted(paths)})"
                )
            path = paths[spec.language]
        else:
            path = params["path"]
        return LexiconScorer.from_file(path, language=spec.language)
    if spec.backend == "score-file":
        return ScoreFileScorer.from_file(params["path"])
    if spec.backend == "ngram-logistic":
        return NgramScorer.from_file(params["path"])
    if spec.backend == "remote":
        return RemoteScorer(
            params["address"], language=spec.language, timeout=float(params.get("timeout", 10.0))
        )
    raise InvalidArgumentError(f"unknown backend {spec.backend!r}")


def _as_scorer(scorer):
    return resolve_scorer(scorer) if isinstance(scorer, ScorerSpec) else scorer


def score_text(text: str, scorer) -> SentimentScore:
    """Score one text with a ScorerSpec or a resolved scorer object."""
    if not text or not text.strip():
        raise InvalidArgumentError("cannot score empty or whitespace-only text")
    backend = _as_scorer(scorer)
    return expected_class_value(backend.distribution(text), scorer_id=backend.scorer_id)


def score_batch(texts: list[str], scorer) -> list[SentimentScore]:
    """Score many texts; element i equals score_text(texts[i], scorer).

    The first failing text aborts the batch with its index attached.
    """
    backend = _as_scorer(scorer)
    for i, text in enumerate(texts):
        if not text or not text.strip():
            raise InvalidArgumentError(f"batch item {i} is empty or whitespace-only")
    if hasattr(backend, "score_batch"):
        return backend.score_batch(list(texts))
    results = []
    for i, text in enumerate(texts):
        try:
            results.append(expected_class_value(backend.distribution(text), scorer_id=backend.scorer_id))
        except ScorerError as exc:
            raise ScorerError(f"batch item {i}: {exc}") from exc
    return results

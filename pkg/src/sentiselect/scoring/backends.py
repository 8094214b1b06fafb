"""Desk-scale scorer backends: polarity lexicon and score-file lookup.

Both backends produce a binary ClassDistribution so that every score,
regardless of backend, flows through the same expected-class-value
computation.
"""

from __future__ import annotations

from pathlib import Path

from ..errors import InvalidArgumentError, ParseError, ScorerError
from ..textnorm import normalize_text, normalize_tokens
from .core import ClassDistribution, SentimentScore, binary_distribution, expected_class_value

#: Gain of the lexicon squash; mean polarity +-0.5 already saturates.
LEXICON_GAIN = 2.0


def _saturating_unit(x: float) -> float:
    """Map a signed intensity to [0, 1], saturating at +-1: clip((1+x)/2)."""
    return min(1.0, max(0.0, 0.5 * (1.0 + x)))


def load_lexicon(path: str | Path) -> dict[str, float]:
    """Read a polarity lexicon: TSV lines ``token<TAB>polarity``.

    Polarities are reals in [-1, 1]; blank lines and ``#`` comments are
    skipped. Tokens are stored in normalized form.
    """
    lexicon: dict[str, float] = {}
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError("expected 'token<TAB>polarity'", line=lineno, source=str(path))
            token = normalize_text(parts[0])
            if not token:
                raise ParseError("empty token", line=lineno, source=str(path))
            try:
                polarity = float(parts[1])
            except ValueError:
                raise ParseError(f"bad polarity {parts[1]!r}", line=lineno, source=str(path)) from None
            if not (-1.0 <= polarity <= 1.0):
                raise ParseError(f"polarity {polarity} outside [-1, 1]", line=lineno, source=str(path))
            lexicon[token] = polarity
    return lexicon


class LexiconScorer:
    """Scores text by the mean polarity of matched unigrams.

    The score is ``squash(gain * mean_polarity)`` where the squash is a
    saturating linear map onto [0, 1]: a text whose matches are all +1
    scores exactly 1.0, all -1 scores 0.0, and no matches at all score a
    neutral 0.5. A heuristic stand-in for a trained classifier, useful
    for fixtures and smoke runs, not a modeling claim.
    """

    def __init__(self, lexicon: dict[str, float], language: str, gain: float = LEXICON_GAIN):
        self._lexicon = dict(lexicon)
        self.language = language
        self.gain = float(gain)
        self.scorer_id = f"lexicon:{language}"

    @classmethod
    def from_file(cls, path: str | Path, language: str, gain: float = LEXICON_GAIN) -> "LexiconScorer":
        return cls(load_lexicon(path), language=language, gain=gain)

    def distribution(self, text: str) -> ClassDistribution:
        matched = [self._lexicon[tok] for tok in normalize_tokens(text) if tok in self._lexicon]
        mean_polarity = sum(matched) / max(1, len(matched))
        return binary_distribution(_saturating_unit(self.gain * mean_polarity))

    def score(self, text: str) -> SentimentScore:
        return expected_class_value(self.distribution(text), scorer_id=self.scorer_id)


def load_score_file(path: str | Path) -> dict[str, float]:
    """Read a score file: TSV lines ``normalized_text<TAB>score``.

    Keys are exact normalized texts; scores are decimals in [0, 1].
    """
    table: dict[str, float] = {}
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError("expected 'normalized_text<TAB>score'", line=lineno, source=str(path))
            key = parts[0]
            if key != normalize_text(key):
                raise ParseError(f"key {key!r} is not in normalized form", line=lineno, source=str(path))
            try:
                score = float(parts[1])
            except ValueError:
                raise ParseError(f"bad score {parts[1]!r}", line=lineno, source=str(path)) from None
            if not (0.0 <= score <= 1.0):
                raise ParseError(f"score {score} outside [0, 1]", line=lineno, source=str(path))
            if key in table:
                raise ParseError(f"duplicate key {key!r}", line=lineno, source=str(path))
            table[key] = score
    return table


class ScoreFileScorer:
    """Looks up precomputed scores keyed by normalized text."""

    def __init__(self, table: dict[str, float], source: str = "score-file"):
        self._table = dict(table)
        self.scorer_id = f"score-file:{source}"

    @classmethod
    def from_file(cls, path: str | Path) -> "ScoreFileScorer":
        return cls(load_score_file(path), source=Path(path).name)

    def distribution(self, text: str) -> ClassDistribution:
        key = normalize_text(text)
        if key not in self._table:
            raise ScorerError(f"text not present in score file (normalized key {key!r})")
        return binary_distribution(self._table[key])

    def score(self, text: str) -> SentimentScore:
        return expected_class_value(self.distribution(text), scorer_id=self.scorer_id)


def write_score_file(table: dict[str, float], path: str | Path) -> None:
    """Write a score table in the score-file TSV format."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for key, score in table.items():
            if key != normalize_text(key):
                raise InvalidArgumentError(f"key {key!r} is not in normalized form")
            fh.write(f"{key}\t{score}\n")

"""Text normalization used by the desk-scale scorers and by BLEU.

Two tokenizations live here on purpose:

* scorer normalization drops punctuation entirely (lexicon lookups and
  n-gram features should not see ``great!`` and ``great`` as different),
* BLEU tokenization splits punctuation off as separate tokens so that
  precision counts punctuation the way reference tokenizers do.
"""

from __future__ import annotations

import re

_PUNCT_RE = re.compile(r"[^\w\s]+", re.UNICODE)
_PUNCT_SPLIT_RE = re.compile(r"(\W)", re.UNICODE)
_WS_RE = re.compile(r"\s+")


def normalize_tokens(text: str) -> list[str]:
    """Lowercase, strip punctuation, split on whitespace."""
    cleaned = _PUNCT_RE.sub(" ", text.lower())
    return cleaned.split()


def normalize_text(text: str) -> str:
    """Canonical normalized form: normalized tokens joined by single spaces.

    This is the exact key format of score files.
    """
    return " ".join(normalize_tokens(text))


def bleu_tokens(text: str) -> list[str]:
    """Lowercase and split punctuation into standalone tokens."""
    parts = _PUNCT_SPLIT_RE.split(text.lower())
    return [p for p in parts if p and not p.isspace()]

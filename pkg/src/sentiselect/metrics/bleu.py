"""Corpus-level BLEU with brevity penalty, single reference per segment.

Tokenization is fixed (lowercase, punctuation split off, whitespace):
consistent comparisons matter more than any particular external
tokenizer. No smoothing is applied; a zero modified precision at any
order yields BLEU 0. Orders for which the hypothesis corpus contains no
n-grams at all are skipped, so a corpus scored against itself is always
exactly 100 even when every segment is shorter than max_order.
"""

from __future__ import annotations

import math
from collections import Counter

from ..errors import InvalidArgumentError
from ..textnorm import bleu_tokens


def _ngram_counts(tokens: list[str], order: int) -> Counter:
    return Counter(tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1))


def corpus_bleu(hypotheses: list[str], references: list[str], max_order: int = 4) -> float:
    """BLEU on [0, 100]: geometric mean of modified n-gram precisions
    times the brevity penalty exp(min(0, 1 - r/c))."""
    if len(hypotheses) != len(references):
        raise InvalidArgumentError(
            f"{len(hypotheses)} hypotheses vs {len(references)} references"
        )
    if not hypotheses:
        raise InvalidArgumentError("empty corpus")
    if max_order < 1:
        raise InvalidArgumentError(f"max_order {max_order} must be >= 1")

    matched = [0] * max_order
    total = [0] * max_order
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        hyp_tokens = bleu_tokens(hyp)
        ref_tokens = bleu_tokens(ref)
        hyp_len += len(hyp_tokens)
        ref_len += len(ref_tokens)
        for order in range(1, max_order + 1):
            hyp_counts = _ngram_counts(hyp_tokens, order)
            ref_counts = _ngram_counts(ref_tokens, order)
            total[order - 1] += sum(hyp_counts.values())
            matched[order - 1] += sum(
                min(count, ref_counts[gram]) for gram, count in hyp_counts.items()
            )

    if total[0] == 0:
        return 0.0
    precisions = [(m, t) for m, t in zip(matched, total) if t > 0]
    if any(m == 0 for m, _ in precisions):
        return 0.0
    log_mean = math.fsum(math.log(m / t) for m, t in precisions) / len(precisions)
    brevity = math.exp(min(0.0, 1.0 - ref_len / hyp_len))
    return 100.0 * brevity * math.exp(log_mean)

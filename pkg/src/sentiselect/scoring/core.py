"""Continuous sentiment scores from classifier outputs.

A classifier hands back one probability per class; each class carries a
numeric value (binary default: negative=0, positive=1). The sentiment
score of a text is the expected class value under that distribution,
which for the binary encoding collapses to the positive-class
probability. Scores therefore live on a continuous interval rather than
a polarity label, which is what lets downstream candidate selection
compare *degrees* of sentiment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidArgumentError

#: Class values of the default binary encoding.
BINARY_CLASS_VALUES = (0.0, 1.0)
BINARY_CLASS_LABELS = ("negative", "positive")

_PROB_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ClassDistribution:
    """A probability distribution over sentiment classes.

    probabilities[i] is the posterior mass of the class labelled
    class_labels[i], whose numeric encoding is class_values[i].
    """

    probabilities: tuple[float, ...]
    class_values: tuple[float, ...] = BINARY_CLASS_VALUES
    class_labels: tuple[str, ...] = BINARY_CLASS_LABELS

    def __post_init__(self):
        object.__setattr__(self, "probabilities", tuple(float(p) for p in self.probabilities))
        object.__setattr__(self, "class_values", tuple(float(v) for v in self.class_values))
        object.__setattr__(self, "class_labels", tuple(str(c) for c in self.class_labels))
        self.validate()

    def validate(self) -> None:
        m = len(self.probabilities)
        if m < 2:
            raise InvalidArgumentError(f"need at least 2 classes, got {m}")
        if len(self.class_values) != m or len(self.class_labels) != m:
            raise InvalidArgumentError(
                "probabilities, class_values and class_labels must have equal length "
                f"(got {m}, {len(self.class_values)}, {len(self.class_labels)})"
            )
        for p in self.probabilities:
            if not (0.0 <= p <= 1.0):
                raise InvalidArgumentError(f"probability {p!r} outside [0, 1]")
        total = math.fsum(self.probabilities)
        if abs(total - 1.0) > _PROB_SUM_TOL:
            raise InvalidArgumentError(f"probabilities sum to {total!r}, not 1")
        for v in self.class_values:
            if not math.isfinite(v):
                raise InvalidArgumentError(f"class value {v!r} is not finite")
        if len(set(self.class_values)) != m:
            raise InvalidArgumentError("class values must be pairwise distinct")

    @property
    def num_classes(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True)
class SentimentScore:
    """A scalar sentiment score with provenance.

    ``value`` is the expected class value; with binary {0,1} classes it
    equals the positive-class probability and lies in [0, 1].
    """

    value: float
    scorer_id: str
    distribution: ClassDistribution | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.distribution is not None:
            expected = math.fsum(
                p * v
                for p, v in zip(self.distribution.probabilities, self.distribution.class_values)
            )
            if abs(self.value - expected) > _PROB_SUM_TOL:
                raise InvalidArgumentError(
                    f"score {self.value!r} inconsistent with its distribution "
                    f"(expected class value {expected!r})"
                )


def softmax(logits) -> list[float]:
    """Convert raw classifier logits into a probability distribution.

    Uses max-subtraction, so magnitudes up to |logit| = 700 cannot
    overflow. The output sums to 1 and preserves the input argmax.
    """
    arr = np.asarray(logits, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidArgumentError("logits must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("logits must all be finite")
    shifted = arr - arr.max()
    exps = np.exp(shifted)
    return [float(p) for p in exps / exps.sum()]


def expected_class_value(dist: ClassDistribution, scorer_id: str = "distribution") -> SentimentScore:
    """Collapse a class distribution to its expected class value.

    For binary classes valued (0, 1) this is exactly the probability of
    the positive class.
    """
    dist.validate()
    value = math.fsum(p * v for p, v in zip(dist.probabilities, dist.class_values))
    return SentimentScore(value=value, scorer_id=scorer_id, distribution=dist)


def binary_distribution(positive_probability: float) -> ClassDistribution:
    """Build the default negative/positive distribution from P(positive)."""
    p = float(positive_probability)
    if not (0.0 <= p <= 1.0):
        raise InvalidArgumentError(f"positive probability {p!r} outside [0, 1]")
    return ClassDistribution(probabilities=(1.0 - p, p))

"""Labeled-corpus loading.

Corpora are TSV lines ``label<TAB>text`` with labels negative, positive,
or neutral. Neutral examples are dropped by default (binary training);
pass drop_neutral=False to keep them out of curiosity, though the
trainer itself only accepts the two polar labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

NEGATIVE = "negative"
POSITIVE = "positive"
NEUTRAL = "neutral"

LABEL_IDS = {NEGATIVE: 0, POSITIVE: 1}


@dataclass(frozen=True)
class LabeledExample:
    text: str
    label: str


def load_labeled_tsv(path: str | Path, drop_neutral: bool = True) -> list[LabeledExample]:
    examples = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise ValueError(f"{path}:line {lineno}: expected 'label<TAB>text'")
            label, text = line.split("\t", 1)
            label = label.strip().lower()
            if label not in (NEGATIVE, POSITIVE, NEUTRAL):
                raise ValueError(f"{path}:line {lineno}: unknown label {label!r}")
            if label == NEUTRAL and drop_neutral:
                continue
            if not text.strip():
                raise ValueError(f"{path}:line {lineno}: empty text")
            examples.append(LabeledExample(text=text, label=label))
    return examples


def majority_class_accuracy(examples: list[LabeledExample]) -> float:
    """Accuracy of always predicting the most frequent label."""
    if not examples:
        raise ValueError("empty example list")
    positives = sum(1 for e in examples if e.label == POSITIVE)
    return max(positives, len(examples) - positives) / len(examples)

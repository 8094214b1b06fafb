"""Deterministic inference over a fine-tuned checkpoint.

Checkpoint directory layout (written by training.fine_tune):

    config.json, model.safetensors   the classifier
    tokenizer.json, tokenizer_config.json
    meta.json                        identity, class values/labels,
                                     max sequence length, dev accuracy

Scores are expected class values recomputed from the softmax
probabilities, so ``scores[i] == sum(probabilities[i][j] *
class_values[j])`` holds exactly for every response.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

import torch
from transformers import BertForSequenceClassification, BertTokenizer


class SentimentModel:
    def __init__(self, model, tokenizer, meta: dict):
        self._model = model
        self._model.eval()
        self._tokenizer = tokenizer
        self.meta = meta
        self.identity: str = meta["model_identity"]
        self.class_values: list[float] = [float(v) for v in meta["class_values"]]
        self.class_labels: list[str] = list(meta["class_labels"])
        self.max_seq_length: int = int(meta.get("max_seq_length", 128))
        self.batch_size: int = 32
        self._lock = threading.Lock()

    @classmethod
    def load(cls, checkpoint_dir: str | Path) -> "SentimentModel":
        checkpoint_dir = Path(checkpoint_dir)
        meta = json.loads((checkpoint_dir / "meta.json").read_text(encoding="utf-8"))
        model = BertForSequenceClassification.from_pretrained(checkpoint_dir)
        tokenizer = BertTokenizer.from_pretrained(checkpoint_dir)
        return cls(model, tokenizer, meta)

    def probabilities(self, texts: list[str]) -> list[list[float]]:
        """Softmax class probabilities per text; deterministic and
        thread-safe (requests are serialized)."""
        if not texts:
            return []
        rows: list[list[float]] = []
        with self._lock, torch.no_grad():
            for start in range(0, len(texts), self.batch_size):
                chunk = texts[start : start + self.batch_size]
                encoded = self._tokenizer(
                    chunk,
                    padding=True,
                    truncation=True,
                    max_length=self.max_seq_length,
                    return_tensors="pt",
                )
                # double-precision softmax keeps row sums within 1e-15,
                # well inside the wire protocol's 1e-6 allowance
                probs = torch.softmax(self._model(**encoded).logits.double(), dim=-1)
                rows.extend([float(p) for p in row] for row in probs)
        return rows

    def scores(self, probabilities: list[list[float]]) -> list[float]:
        """Expected class value per row of probabilities."""
        return [
            sum(p * v for p, v in zip(row, self.class_values))
            for row in probabilities
        ]

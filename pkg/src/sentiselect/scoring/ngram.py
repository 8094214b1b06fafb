"""Word n-gram logistic-regression scorer and its trainer.

A deliberately small stand-in for a fine-tuned neural classifier: count
features over word n-grams, an L2-regularized logistic model fit with
L-BFGS, and a versioned JSON artifact that the scoring backend loads.
The scoring path is an explicit dot product so its behaviour can be
checked by hand.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

from ..errors import InvalidArgumentError, ParseError
from ..textnorm import normalize_tokens
from .core import ClassDistribution, SentimentScore, binary_distribution, expected_class_value

ARTIFACT_FORMAT = "sentiselect-ngram-logistic"
ARTIFACT_VERSION = 1

NEGATIVE_LABEL = "negative"
POSITIVE_LABEL = "positive"

DEFAULT_TRAIN_CONFIG = {
    "ngram_orders": [1, 2],
    "l2": 1.0,
    "holdout_fraction": 0.2,
    "seed": 0,
    "max_iter": 500,
}


def extract_ngrams(text: str, orders: tuple[int, ...]) -> list[str]:
    """Normalized word n-grams of the given orders, space-joined."""
    tokens = normalize_tokens(text)
    grams: list[str] = []
    for n in orders:
        grams.extend(" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
    return grams


def _sigmoid(z: float) -> float:
    # Branch on sign to avoid overflow in exp for large |z|.
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


@dataclass(frozen=True)
class NgramModel:
    """Trained n-gram logistic model: sigmoid(weights . counts + bias)."""

    vocabulary: dict[str, int]
    weights: tuple[float, ...]
    bias: float
    ngram_orders: tuple[int, ...]
    language: str = "und"
    metadata: dict | None = None

    def decision_value(self, text: str) -> float:
        z = self.bias
        for gram in extract_ngrams(text, self.ngram_orders):
            idx = self.vocabulary.get(gram)
            if idx is not None:
                z += self.weights[idx]
        return z

    def positive_probability(self, text: str) -> float:
        return _sigmoid(self.decision_value(text))


class NgramScorer:
    """Scorer backend over a loaded NgramModel."""

    def __init__(self, model: NgramModel, source: str = "ngram"):
        self.model = model
        self.scorer_id = f"ngram-logistic:{source}"

    @classmethod
    def from_file(cls, path: str | Path) -> "NgramScorer":
        return cls(load_ngram_model(path), source=Path(path).name)

    def distribution(self, text: str) -> ClassDistribution:
        return binary_distribution(self.model.positive_probability(text))

    def score(self, text: str) -> SentimentScore:
        return expected_class_value(self.distribution(text), scorer_id=self.scorer_id)


@dataclass(frozen=True)
class TrainingReport:
    train_accuracy: float
    heldout_accuracy: float | None
    num_train: int
    num_heldout: int


def _build_features(texts, orders: tuple[int, ...]):
    vocabulary: dict[str, int] = {}
    rows = []
    for text in texts:
        counts: dict[int, float] = {}
        for gram in extract_ngrams(text, orders):
            idx = vocabulary.setdefault(gram, len(vocabulary))
            counts[idx] = counts.get(idx, 0.0) + 1.0
        rows.append(counts)
    X = np.zeros((len(texts), len(vocabulary)))
    for i, counts in enumerate(rows):
        for j, c in counts.items():
            X[i, j] = c
    return vocabulary, X


def _stratified_split(labels: list[int], holdout_fraction: float, seed: int):
    rng = random.Random(seed)
    train_idx: list[int] = []
    heldout_idx: list[int] = []
    for cls in (0, 1):
        idx = [i for i, y in enumerate(labels) if y == cls]
        rng.shuffle(idx)
        cut = int(round(len(idx) * holdout_fraction))
        cut = min(cut, len(idx) - 1)  # keep at least one training example per class
        heldout_idx.extend(idx[:cut])
        train_idx.extend(idx[cut:])
    return sorted(train_idx), sorted(heldout_idx)


def train_ngram_scorer(corpus, config: dict | None = None) -> tuple[NgramModel, TrainingReport]:
    """Fit the n-gram logistic scorer on (text, label) pairs.

    Labels are the strings "negative" / "positive". The corpus must
    contain both. Config keys (all optional): ngram_orders, l2,
    holdout_fraction, seed, max_iter. Training is deterministic for a
    fixed seed: the seed only drives the held-out split, and the
    optimizer starts from zero weights.
    """
    cfg = dict(DEFAULT_TRAIN_CONFIG)
    for key, value in (config or {}).items():
        if key not in DEFAULT_TRAIN_CONFIG:
            raise InvalidArgumentError(f"unknown training config key {key!r}")
        cfg[key] = value

    corpus = list(corpus)
    if not corpus:
        raise InvalidArgumentError("empty training corpus")
    texts = []
    labels = []
    for text, label in corpus:
        if label not in (NEGATIVE_LABEL, POSITIVE_LABEL):
            raise InvalidArgumentError(f"label {label!r} must be 'negative' or 'positive'")
        texts.append(text)
        labels.append(1 if label == POSITIVE_LABEL else 0)
    if len(set(labels)) < 2:
        raise InvalidArgumentError("corpus must contain both labels")

    orders = tuple(int(n) for n in cfg["ngram_orders"])
    if not orders or any(n < 1 for n in orders):
        raise InvalidArgumentError(f"bad ngram orders {cfg['ngram_orders']!r}")
    l2 = float(cfg["l2"])
    if l2 < 0:
        raise InvalidArgumentError("l2 strength must be >= 0")

    train_idx, heldout_idx = _stratified_split(labels, float(cfg["holdout_fraction"]), int(cfg["seed"]))
    train_texts = [texts[i] for i in train_idx]
    y_train = np.array([labels[i] for i in train_idx], dtype=np.float64)

    vocabulary, X = _build_features(train_texts, orders)
    n_feats = X.shape[1]

    def loss_grad(params):
        w, b = params[:n_feats], params[n_feats]
        z = X @ w + b
        # log(1 + e^z) computed stably
        log1pexp = np.where(z > 30, z, np.log1p(np.exp(np.minimum(z, 30))))
        nll = float(np.sum(log1pexp - y_train * z))
        p = 1.0 / (1.0 + np.exp(-np.clip(z, -700, 700)))
        grad_w = X.T @ (p - y_train) + l2 * w
        grad_b = float(np.sum(p - y_train))
        return nll + 0.5 * l2 * float(w @ w), np.concatenate([grad_w, [grad_b]])

    x0 = np.zeros(n_feats + 1)
    result = minimize(loss_grad, x0, jac=True, method="L-BFGS-B", options={"maxiter": int(cfg["max_iter"])})
    weights = tuple(float(v) for v in result.x[:n_feats])
    bias = float(result.x[n_feats])

    model = NgramModel(
        vocabulary=vocabulary,
        weights=weights,
        bias=bias,
        ngram_orders=orders,
        metadata={
            "l2": l2,
            "seed": int(cfg["seed"]),
            "num_examples": len(corpus),
        },
    )

    def accuracy(indices) -> float:
        correct = sum(
            1 for i in indices if (model.positive_probability(texts[i]) >= 0.5) == (labels[i] == 1)
        )
        return correct / len(indices)

    report = TrainingReport(
        train_accuracy=accuracy(train_idx),
        heldout_accuracy=accuracy(heldout_idx) if heldout_idx else None,
        num_train=len(train_idx),
        num_heldout=len(heldout_idx),
    )
    return model, report


def save_ngram_model(model: NgramModel, path: str | Path) -> None:
    payload = {
        "format": ARTIFACT_FORMAT,
        "format_version": ARTIFACT_VERSION,
        "language": model.language,
        "ngram_orders": list(model.ngram_orders),
        "vocabulary": model.vocabulary,
        "weights": list(model.weights),
        "bias": model.bias,
        "normalization": {"lowercase": True, "strip_punctuation": True},
        "class_values": [0.0, 1.0],
        "class_labels": [NEGATIVE_LABEL, POSITIVE_LABEL],
        "metadata": model.metadata or {},
    }
    with Path(path).open("w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_ngram_model(path: str | Path) -> NgramModel:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"model artifact is not valid JSON: {exc}", source=str(path)) from None
    if payload.get("format") != ARTIFACT_FORMAT:
        raise ParseError(f"unexpected artifact format {payload.get('format')!r}", source=str(path))
    if payload.get("format_version") != ARTIFACT_VERSION:
        raise ParseError(f"unsupported artifact version {payload.get('format_version')!r}", source=str(path))
    vocabulary = {str(k): int(v) for k, v in payload["vocabulary"].items()}
    weights = tuple(float(w) for w in payload["weights"])
    if len(weights) != len(vocabulary):
        raise ParseError("weights and vocabulary sizes disagree", source=str(path))
    return NgramModel(
        vocabulary=vocabulary,
        weights=weights,
        bias=float(payload["bias"]),
        ngram_orders=tuple(int(n) for n in payload["ngram_orders"]),
        language=str(payload.get("language", "und")),
        metadata=payload.get("metadata"),
    )

"""Sentiment scorer sidecar: fine-tunes small transformer classifiers
and serves them over the remote scorer wire protocol."""

from .data import LabeledExample, load_labeled_tsv
from .inference import SentimentModel
from .training import TrainingConfig, fine_tune

__version__ = "0.1.0"

__all__ = [
    "LabeledExample",
    "SentimentModel",
    "TrainingConfig",
    "fine_tune",
    "load_labeled_tsv",
]

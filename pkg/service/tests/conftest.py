import random

import pytest

from scorer_service.data import LabeledExample
from scorer_service.training import TrainingConfig, fine_tune

POSITIVE_CUES = ["great", "love", "wonderful", "happy", "awesome", "nice"]
NEGATIVE_CUES = ["awful", "hate", "terrible", "sad", "gross", "bad"]
FILLER = [
    "the", "day", "at", "work", "was", "really", "so", "just", "went", "home",
    "phone", "update", "coffee", "meeting", "flight", "today",
]

# From-scratch desk training: the 2e-5 default assumes a pretrained
# encoder, which this sandbox cannot download.
SCRATCH_LEARNING_RATE = 1e-2


def synthetic_corpus(n: int, seed: int, positive_fraction: float = 0.55) -> list[LabeledExample]:
    """Tweet-shaped texts whose label is carried by cue words."""
    rng = random.Random(seed)
    examples = []
    for _ in range(n):
        positive = rng.random() < positive_fraction
        cues = rng.choices(POSITIVE_CUES if positive else NEGATIVE_CUES, k=rng.randint(1, 2))
        words = rng.choices(FILLER, k=rng.randint(4, 9)) + cues
        rng.shuffle(words)
        examples.append(LabeledExample(
            text=" ".join(words),
            label="positive" if positive else "negative",
        ))
    return examples


@pytest.fixture(scope="session")
def trained(tmp_path_factory):
    """One fine-tuned checkpoint shared by the protocol tests."""
    corpus = synthetic_corpus(1000, seed=123)
    config = TrainingConfig(learning_rate=SCRATCH_LEARNING_RATE, restarts=1, seed=0)
    output = tmp_path_factory.mktemp("checkpoint")
    result = fine_tune(corpus, config, output)
    return result

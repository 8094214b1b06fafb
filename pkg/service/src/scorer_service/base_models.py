"""Locally constructible base encoders.

This sandbox has no model hub, so base-model identifiers name small
BERT-style encoders that are built on the spot: a WordPiece-compatible
vocabulary derived from the training corpus plus a randomly initialized
encoder. The classification head starts at zero so that every logit the
fine-tuned model produces comes from training, not from head-init noise.

Multilingual behavior falls out of the corpus: build the vocabulary
from mixed-language text and the same encoder serves any language that
shares it (zero-shot scoring of languages seen only through vocabulary
overlap).
"""

from __future__ import annotations

from collections import Counter

import torch
from transformers import BertConfig, BertForSequenceClassification, BertTokenizer

SPECIAL_TOKENS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]

#: Architecture per identifier. "tiny" trains reliably from scratch on
#: desk-scale corpora; "small" is the roomier variant.
BASE_MODELS = {
    "tiny-uncased": dict(hidden_size=64, num_hidden_layers=1, num_attention_heads=2,
                         intermediate_size=128),
    "small-uncased": dict(hidden_size=128, num_hidden_layers=2, num_attention_heads=4,
                          intermediate_size=256),
}


def build_vocab(texts, max_size: int = 8000) -> dict[str, int]:
    """Frequency-ranked word-level vocabulary with the BERT specials."""
    counts = Counter(token for text in texts for token in text.lower().split())
    tokens = SPECIAL_TOKENS + [w for w, _ in counts.most_common(max_size - len(SPECIAL_TOKENS))]
    return {token: index for index, token in enumerate(tokens)}


def build_tokenizer(vocab: dict[str, int]) -> BertTokenizer:
    return BertTokenizer(vocab=vocab, do_lower_case=True)


def build_model(base_model: str, vocab_size: int, max_seq_length: int) -> BertForSequenceClassification:
    if base_model not in BASE_MODELS:
        raise ValueError(f"unknown base model {base_model!r}; have {sorted(BASE_MODELS)}")
    config = BertConfig(
        vocab_size=vocab_size,
        max_position_embeddings=max_seq_length,
        num_labels=2,
        **BASE_MODELS[base_model],
    )
    model = BertForSequenceClassification(config)
    torch.nn.init.zeros_(model.classifier.weight)
    torch.nn.init.zeros_(model.classifier.bias)
    return model

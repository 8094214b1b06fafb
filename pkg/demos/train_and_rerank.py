"""Train the n-gram scorer, then re-rank a synthetic corpus with it.

Builds a small labeled corpus, fits the logistic n-gram model, and uses
it on both sides of a same-language round-trip corpus where 30% of
model-best candidates had their sentiment flipped. Prints the corpus
summary next to the rank-0 baseline.

Run:  python3 demos/train_and_rerank.py
"""

import random

from sentiselect import RerankConfig, SourceSegment, rerank_corpus
from sentiselect.nbest import Candidate, NBestList
from sentiselect.scoring import NgramScorer, train_ngram_scorer

POSITIVE = ["great", "wonderful", "lovely", "superb", "delightful"]
NEGATIVE = ["awful", "terrible", "dreadful", "miserable", "nasty"]
FILLER = ["the", "service", "today", "was", "frankly", "overall", "visit"]


def make_training_corpus(rng, size=200):
    corpus = []
    for _ in range(size):
        positive = rng.random() < 0.5
        cue = rng.choice(POSITIVE if positive else NEGATIVE)
        text = " ".join(rng.choices(FILLER, k=4) + [cue])
        corpus.append((text, "positive" if positive else "negative"))
    return corpus


def make_eval_corpus(rng, size=60, flip_fraction=0.3):
    sources, nbest_map, flipped = [], {}, set()
    for i in range(size):
        positive = rng.random() < 0.5
        cue = rng.choice(POSITIVE if positive else NEGATIVE)
        anti = rng.choice(NEGATIVE if positive else POSITIVE)
        text = " ".join(rng.choices(FILLER, k=3) + [cue])
        faithful = " ".join(rng.choices(FILLER, k=3) + [cue])
        corrupted = " ".join(rng.choices(FILLER, k=3) + [anti])
        if rng.random() < flip_fraction:
            texts = [corrupted, faithful, " ".join(rng.choices(FILLER, k=4))]
            flipped.add(i)
        else:
            texts = [faithful, " ".join(rng.choices(FILLER, k=4)), corrupted]
        sources.append(SourceSegment(id=i, text=text, language="en"))
        nbest_map[i] = NBestList(
            source_id=i,
            candidates=tuple(Candidate(rank=r, text=t) for r, t in enumerate(texts)),
        )
    return sources, nbest_map, flipped


def main():
    rng = random.Random(0)

    print("fitting the n-gram logistic scorer ...")
    model, report = train_ngram_scorer(make_training_corpus(rng), {"seed": 0})
    print(f"  train accuracy:    {report.train_accuracy:.3f}  ({report.num_train} examples)")
    print(f"  held-out accuracy: {report.heldout_accuracy:.3f}  ({report.num_heldout} examples)")
    print()

    scorer = NgramScorer(model)
    sources, nbest_map, flipped = make_eval_corpus(rng)
    results, summary = rerank_corpus(
        sources, nbest_map, RerankConfig(), source_scorer=scorer, target_scorer=scorer
    )

    print(f"re-ranked {summary.num_segments} segments "
          f"({len(flipped)} had a sentiment flip at rank 0)")
    print(f"  mean divergence, rank-0 baseline: {summary.mean_rank0_divergence:.4f}")
    print(f"  mean divergence, re-ranked:       {summary.mean_selected_divergence:.4f}")
    print(f"  selections below rank 0:          {summary.non_top_fraction:.0%}")

    recovered = sum(1 for r in results if r.source_id in flipped and r.selected_rank != 0)
    if flipped:
        print(f"  corrupted segments recovered:     {recovered}/{len(flipped)}")


if __name__ == "__main__":
    main()

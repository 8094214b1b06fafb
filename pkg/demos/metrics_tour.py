"""Quick tour of the evaluation statistics.

Shows corpus BLEU with its brevity penalty, Pearson's r with the exact
p-value, and Krippendorff's interval alpha, each on inputs small enough
to check by eye.

Run:  python3 demos/metrics_tour.py
"""

from sentiselect.metrics import (
    AgreementMatrix,
    PairedSamples,
    corpus_bleu,
    krippendorff_alpha_interval,
    pearson_r,
)


def main():
    print("corpus BLEU")
    hyps = ["the cat sat on the mat .", "he reads many books ."]
    refs = ["the cat was sitting on the mat .", "he reads many old books ."]
    print(f"  vs. close references: {corpus_bleu(hyps, refs):.2f}")
    print(f"  vs. themselves:       {corpus_bleu(hyps, hyps):.2f}")
    print(f"  vs. unrelated text:   {corpus_bleu(hyps, ['x y z', 'q r s']):.2f}")
    print()

    print("Pearson's r with exact two-tailed p")
    accuracy = (4.5, 4.0, 3.5, 2.0, 1.5, 3.0, 2.5, 0.5)
    divergence = (0.0, 0.5, 0.5, 1.5, 1.5, 1.0, 1.0, 2.0)
    r, p = pearson_r(PairedSamples(accuracy, divergence))
    print(f"  accuracy vs divergence over 8 ratings: r = {r:+.3f}, p = {p:.2e}")
    print("  (higher-rated translations diverge less, as expected)")
    print()

    print("Krippendorff's alpha, interval metric")
    perfect = AgreementMatrix(((4.0, 4.0), (2.5, 2.5), (1.0, 1.0)))
    print(f"  identical annotators:  {krippendorff_alpha_interval(perfect):.3f}")
    close = AgreementMatrix(((4.0, 4.5), (2.5, 2.5), (1.0, 1.5), (3.0, 3.0)))
    print(f"  near agreement:        {krippendorff_alpha_interval(close):.3f}")
    noisy = AgreementMatrix(((4.0, 1.0), (2.5, 4.5), (1.0, 3.5), (3.0, 0.5)))
    print(f"  unrelated annotators:  {krippendorff_alpha_interval(noisy):.3f}")


if __name__ == "__main__":
    main()

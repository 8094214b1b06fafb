import math
import random

import numpy as np
import pytest

from sentiselect.errors import InvalidArgumentError, UndefinedStatisticError, ValidationError
from sentiselect.evalharness import EvaluationRecord
from sentiselect.metrics import (
    AgreementMatrix,
    MetricsReport,
    PairedSamples,
    aggregate_ratings,
    corpus_bleu,
    krippendorff_alpha_interval,
    pearson_r,
    reason_code_frequencies,
)

# ---------------------------------------------------------------------------
# BLEU

# Hand-counted fixture (max_order 4, single references):
#   hyp1 "the cat sat on the mat ."  ref1 "the cat was sitting on the mat ."
#   hyp2 "he reads many books ."     ref2 "he reads many old books ."
# Clipped matches / totals per order: 11/12, 7/10, 3/8, 1/6.
# Lengths c = 12, r = 14 -> brevity penalty exp(1 - 14/12) = exp(-1/6).
# BLEU = 100 * exp(-1/6) * (11/12 * 7/10 * 3/8 * 1/6)^(1/4)
#      = 37.880435251712613 (50-digit evaluation of the same expression).
HAND_HYPS = ["The cat sat on the mat.", "He reads many books."]
HAND_REFS = ["The cat was sitting on the mat.", "He reads many old books."]
HAND_BLEU = 37.880435251712613


class TestCorpusBleu:
    def test_identical_corpora(self):
        hyps = ["The quick brown fox.", "Jumps over the lazy dog!"]
        assert corpus_bleu(hyps, list(hyps)) == 100.0

    def test_disjoint_vocabulary(self):
        assert corpus_bleu(["aaa bbb ccc ddd"], ["eee fff ggg hhh"]) == 0.0

    def test_hand_counted_fixture(self):
        assert corpus_bleu(HAND_HYPS, HAND_REFS) == pytest.approx(HAND_BLEU, abs=1e-9)

    def test_hand_counts_reproduced_from_components(self):
        # Same arithmetic as the hand-counted derivation, kept exact in
        # fractions until the final floats.
        from fractions import Fraction

        precisions = [Fraction(11, 12), Fraction(7, 10), Fraction(3, 8), Fraction(1, 6)]
        log_mean = sum(math.log(float(p)) for p in precisions) / 4
        expected = 100.0 * math.exp(1 - Fraction(14, 12)) * math.exp(log_mean)
        assert corpus_bleu(HAND_HYPS, HAND_REFS) == pytest.approx(expected, abs=1e-9)

    def test_pair_permutation_invariance(self):
        rng = random.Random(5)
        hyps = [f"word{i} tok{i % 3} x y z" for i in range(8)]
        refs = [f"word{i} tok{(i + 1) % 3} x y q" for i in range(8)]
        base = corpus_bleu(hyps, refs)
        pairs = list(zip(hyps, refs))
        for _ in range(20):
            rng.shuffle(pairs)
            h, r = zip(*pairs)
            assert corpus_bleu(list(h), list(r)) == pytest.approx(base, abs=1e-12)

    def test_short_sentences_still_score_100_on_self(self):
        # No 4-grams anywhere; absent orders are skipped, not zeroed.
        hyps = ["one two", "three"]
        assert corpus_bleu(hyps, list(hyps)) == 100.0

    def test_range_on_random_corpora(self):
        rng = random.Random(77)
        vocab = [f"w{i}" for i in range(30)]
        for _ in range(100):
            n = rng.randint(1, 5)
            hyps = [" ".join(rng.choices(vocab, k=rng.randint(1, 12))) for _ in range(n)]
            refs = [" ".join(rng.choices(vocab, k=rng.randint(1, 12))) for _ in range(n)]
            value = corpus_bleu(hyps, refs)
            assert 0.0 <= value <= 100.0

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            corpus_bleu(["a"], ["a", "b"])


# ---------------------------------------------------------------------------
# Pearson

# 8-point fixture frozen from a 50-digit direct evaluation of
# r = S_xy / sqrt(S_xx S_yy) and p = I_x(df/2, 1/2), x = df/(df + t^2).
PEARSON_XS = (2.1, 3.4, 1.7, 4.0, 5.5, 3.3, 2.8, 4.9)
PEARSON_YS = (1.2, 2.9, 1.1, 3.8, 4.1, 3.0, 2.2, 4.5)
PEARSON_R = 0.9561945112220920
PEARSON_P = 2.0330442045167115e-4


class TestPearson:
    def test_perfect_positive_line(self):
        r, p = pearson_r(PairedSamples((1, 2, 3, 4, 5, 6, 7, 8), (3, 5, 7, 9, 11, 13, 15, 17)))
        assert r == 1.0
        assert p == 0.0

    def test_perfect_negative_line(self):
        r, _ = pearson_r(PairedSamples((1, 2, 3), (-1, -2, -3)))
        assert r == -1.0

    def test_frozen_eight_point_fixture(self):
        r, p = pearson_r(PairedSamples(PEARSON_XS, PEARSON_YS))
        assert r == pytest.approx(PEARSON_R, abs=1e-12)
        assert p == pytest.approx(PEARSON_P, rel=1e-9)

    def test_symmetry_in_arguments(self):
        r_xy, p_xy = pearson_r(PairedSamples(PEARSON_XS, PEARSON_YS))
        r_yx, p_yx = pearson_r(PairedSamples(PEARSON_YS, PEARSON_XS))
        assert r_xy == pytest.approx(r_yx, abs=1e-15)
        assert p_xy == pytest.approx(p_yx, abs=1e-15)

    def test_positive_affine_invariance(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            n = int(rng.integers(3, 30))
            xs = rng.normal(size=n)
            ys = rng.normal(size=n)
            a, b = float(rng.uniform(0.1, 5)), float(rng.uniform(-3, 3))
            r0, _ = pearson_r(PairedSamples(tuple(xs), tuple(ys)))
            r1, _ = pearson_r(PairedSamples(tuple(a * xs + b), tuple(ys)))
            assert r1 == pytest.approx(r0, abs=1e-10)

    def test_sign_flip_under_negation(self):
        r0, _ = pearson_r(PairedSamples(PEARSON_XS, PEARSON_YS))
        r1, _ = pearson_r(PairedSamples(PEARSON_XS, tuple(-y for y in PEARSON_YS)))
        assert r1 == pytest.approx(-r0, abs=1e-12)

    def test_zero_variance_is_undefined(self):
        with pytest.raises(UndefinedStatisticError):
            pearson_r(PairedSamples((1, 1, 1), (1, 2, 3)))

    def test_too_few_points(self):
        with pytest.raises(InvalidArgumentError):
            PairedSamples((1, 2), (3, 4))

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            PairedSamples((1, 2, 3), (1, 2))


# ---------------------------------------------------------------------------
# Krippendorff's alpha (interval)


class TestKrippendorffAlpha:
    def test_perfect_agreement_on_varied_items(self):
        matrix = AgreementMatrix(((1.0, 1.0), (3.5, 3.5), (2.0, 2.0), (5.0, 5.0)))
        assert krippendorff_alpha_interval(matrix) == 1.0

    def test_hand_computed_four_item_fixture(self):
        """Units (1,2), (2,2), (3,4), (1,1); two annotators, no missing.

        Observed: per unit sum over ordered pairs of (a-b)^2, divided by
        m_u - 1 = 1, summed: 2 + 0 + 2 + 0 = 4; over n = 8 pairable
        values: D_o = 0.5. Expected: pooled values (1,2,2,2,3,4,1,1),
        sum of ordered-pair squares = 2*8*40 - 2*16^2 = 128, so
        D_e = 128/56 = 16/7. alpha = 1 - 0.5/(16/7) = 0.78125 exactly.
        """
        matrix = AgreementMatrix(((1.0, 2.0), (2.0, 2.0), (3.0, 4.0), (1.0, 1.0)))
        assert krippendorff_alpha_interval(matrix) == pytest.approx(0.78125, abs=1e-9)

    def test_missing_cell_equivalent_to_dropping_lone_value(self):
        with_lone = AgreementMatrix((
            (1.0, 2.0, None),
            (2.0, 2.0, 2.0),
            (3.0, 4.0, 4.0),
            (5.0, None, None),  # single rating: unpairable
        ))
        without = AgreementMatrix((
            (1.0, 2.0, None),
            (2.0, 2.0, 2.0),
            (3.0, 4.0, 4.0),
        ))
        assert krippendorff_alpha_interval(with_lone) == pytest.approx(
            krippendorff_alpha_interval(without), abs=1e-15
        )

    def test_all_identical_values_undefined(self):
        matrix = AgreementMatrix(((2.0, 2.0), (2.0, 2.0)))
        with pytest.raises(UndefinedStatisticError):
            krippendorff_alpha_interval(matrix)

    def test_alpha_never_exceeds_one(self):
        rng = random.Random(9)
        for _ in range(200):
            items = rng.randint(2, 8)
            annotators = rng.randint(2, 4)
            rows = []
            for _ in range(items):
                rows.append(tuple(
                    rng.choice([None, float(rng.randint(0, 4))]) for _ in range(annotators)
                ))
            try:
                matrix = AgreementMatrix(tuple(rows))
                alpha = krippendorff_alpha_interval(matrix)
            except (InvalidArgumentError, UndefinedStatisticError):
                continue
            assert alpha <= 1.0

    def test_requires_two_annotators(self):
        with pytest.raises(InvalidArgumentError):
            AgreementMatrix(((1.0,), (2.0,)))

    def test_requires_one_pairable_item(self):
        with pytest.raises(InvalidArgumentError):
            AgreementMatrix(((1.0, None), (None, 2.0)))


# ---------------------------------------------------------------------------
# Rating aggregation and reason codes


def record(item_id=0, system="baseline", annotator="a1", accuracy=3.0,
           senti_div=0.5, reasons=("MO",), idiomatic=False):
    return EvaluationRecord(
        item_id=item_id,
        system=system,
        annotator_id=annotator,
        accuracy=accuracy,
        senti_div=senti_div,
        reasons=frozenset(reasons),
        idiomatic=idiomatic,
        language_pair="en-es",
    )


class TestAggregateRatings:
    def test_simple_mean(self):
        records = [record(accuracy=2.0), record(accuracy=3.0)]
        means = aggregate_ratings(records, "all")
        assert means["baseline"]["accuracy"] == 2.5

    def test_idiomatic_subset_filters(self):
        records = [
            record(accuracy=1.0, idiomatic=True),
            record(accuracy=5.0, idiomatic=False),
        ]
        means = aggregate_ratings(records, "idiomatic")
        assert means["baseline"]["accuracy"] == 1.0

    def test_absent_system_has_no_cell(self):
        means = aggregate_ratings([record(system="google")], "all")
        assert "baseline" not in means
        assert "google" in means

    def test_duplication_leaves_means_unchanged(self):
        records = [record(accuracy=2.0), record(accuracy=4.5, senti_div=1.5)]
        once = aggregate_ratings(records, "all")
        twice = aggregate_ratings(records + records, "all")
        assert once == twice

    def test_unknown_subset_rejected(self):
        with pytest.raises(InvalidArgumentError):
            aggregate_ratings([record()], "figurative")


class TestReasonCodeFrequencies:
    def test_descending_frequency(self):
        records = [
            record(reasons=("MI",)), record(reasons=("MI",)),
            record(reasons=("MI",)), record(reasons=("MO",)),
        ]
        assert reason_code_frequencies(records)["baseline"] == ["MI", "MO"]

    def test_no_codes_yields_empty(self):
        assert reason_code_frequencies([record(senti_div=0.0, reasons=())]) == {}

    def test_tie_broken_by_canonical_order(self):
        records = [record(reasons=("MO",)), record(reasons=("MI",))]
        assert reason_code_frequencies(records)["baseline"] == ["MI", "MO"]

    def test_unknown_code_names_the_record(self):
        bad = record(item_id=12, annotator="a9", reasons=("XX",))
        with pytest.raises(ValidationError) as err:
            reason_code_frequencies([bad])
        assert "XX" in str(err.value)
        assert "item 12" in str(err.value)

    def test_multi_select_counts_each_code(self):
        records = [record(reasons=("MI", "LT")), record(reasons=("LT",))]
        assert reason_code_frequencies(records)["baseline"] == ["LT", "MI"]


class TestMetricsReport:
    def test_range_validation(self):
        report = MetricsReport(bleu={"baseline": {"tatoeba": 140.0}})
        with pytest.raises(InvalidArgumentError):
            report.validate()

    def test_table_contains_expected_columns_and_rows(self):
        report = MetricsReport(
            bleu={"baseline": {"tatoeba": 31.37, "all": 38.93}},
            pearson={"all": (-0.764, 3.42e-47)},
            alpha={"all": {"accuracy": 0.675, "senti_div": 0.638}},
            means={"all": {"baseline": {"accuracy": 2.06, "senti_div": 0.92}}},
            top_reasons={"baseline": ["MI", "O", "MO"]},
        )
        table = report.to_table()
        assert "BLEU(tatoeba)" in table
        assert "baseline" in table
        assert "MI, O, MO" in table
        assert "r = -0.764" in table

    def test_json_round_trips_through_loads(self):
        import json

        report = MetricsReport(pearson={"all": (0.5, 0.01)})
        payload = json.loads(report.to_json())
        assert payload["pearson"]["all"]["r"] == 0.5

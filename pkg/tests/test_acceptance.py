"""Release gate: each test here implements one acceptance criterion at
its stated size and tolerance. Outcomes are echoed one line per
criterion at the end of the pytest run."""

import io
import json
import os
import random
import time
from pathlib import Path

import pytest
from mpmath import betainc as mp_betainc
from mpmath import mp, mpf, sqrt as mp_sqrt

from sentiselect.errors import ParseError, UndefinedStatisticError
from sentiselect.evalharness import (
    EvaluationRecord,
    build_report,
    read_records_csv,
    write_records_csv,
)
from sentiselect.metrics import (
    AgreementMatrix,
    PairedSamples,
    corpus_bleu,
    krippendorff_alpha_interval,
    pearson_r,
)
from sentiselect.nbest import Candidate, NBestList, SourceSegment, parse_jsonl_nbest, parse_moses_nbest, write_jsonl_nbest
from sentiselect.rerank import RerankConfig, rerank_corpus, select_candidate
from sentiselect.scoring import (
    LexiconScorer,
    ScoreFileScorer,
    binary_distribution,
    expected_class_value,
)

from test_metrics import HAND_BLEU, HAND_HYPS, HAND_REFS
from test_nbest import random_nbest_map
from test_rerank import brute_force_select


def test_reranking_oracle_equivalence():
    """1,000 random instances against an exhaustive brute-force scan,
    tie cases included; total runtime under 1 second."""
    rng = random.Random(2024)
    instances = []
    for _ in range(1000):
        source = rng.random()
        k = rng.randint(1, 10)
        scores = [
            round(rng.random(), 1) if rng.random() < 0.4 else rng.random()
            for _ in range(k)
        ]
        eps = rng.choice([0.0, 1e-12, 1e-12, 1e-6])
        instances.append((source, scores, eps))

    start = time.perf_counter()
    outcomes = [select_candidate(s, scores, eps) for s, scores, eps in instances]
    elapsed = time.perf_counter() - start

    expected = [brute_force_select(s, scores, eps) for s, scores, eps in instances]
    assert outcomes == expected
    assert elapsed < 1.0, f"1,000 selections took {elapsed:.3f}s"


def test_degradation_to_baseline():
    """When every candidate in a list carries one score, the re-ranked
    output is byte-equal to rank-0 decoding."""
    rng = random.Random(7)
    sources = []
    nbest_map = {}
    table = {}
    for i in range(40):
        source_text = f"source segment {i}"
        table[f"source segment {i}"] = rng.random()
        shared = rng.random()
        texts = [f"segment {i} candidate {j}" for j in range(rng.randint(1, 10))]
        for t in texts:
            table[t.lower()] = shared
        sources.append(SourceSegment(id=i, text=source_text, language="en"))
        nbest_map[i] = NBestList(
            source_id=i,
            candidates=tuple(Candidate(rank=r, text=t) for r, t in enumerate(texts)),
        )
    scorer = ScoreFileScorer(table)
    results, summary = rerank_corpus(
        sources, nbest_map, RerankConfig(), source_scorer=scorer, target_scorer=scorer
    )
    baseline = [nbest_map[s.id].candidates[0].text for s in sources]
    assert [r.selected_text for r in results] == baseline
    assert summary.non_top_fraction == 0.0


def test_method_core_identity_binary_scorers():
    """Expected class value equals the positive-class probability to
    1e-9 over 10,000 random binary distributions."""
    rng = random.Random(99)
    for _ in range(10000):
        p = rng.random()
        score = expected_class_value(binary_distribution(p))
        assert abs(score.value - p) <= 1e-9


POSITIVE_EN = ["great", "wonderful", "satisfying", "lovely", "happy"]
NEGATIVE_EN = ["awful", "terrible", "horrible", "nasty", "sad"]
POSITIVE_XX = ["bonito", "estupendo", "agradable", "feliz", "genial"]
NEGATIVE_XX = ["horrible", "espantoso", "fatal", "triste", "malo"]
FILLER_EN = ["the", "meeting", "yesterday", "about", "airline", "luggage", "phone"]
FILLER_XX = ["la", "reunion", "ayer", "sobre", "vuelo", "equipaje", "telefono"]


class MockFlippingBackend:
    """Produces n-best lists where, for a chosen subset of segments, the
    model-best candidate flips every sentiment word to its antonym and
    the sentiment-preserving candidate sits at some lower rank."""

    def __init__(self, seed: int, flip_fraction: float = 0.3):
        self._rng = random.Random(seed)
        self.flip_fraction = flip_fraction
        self.flipped_ids: set[int] = set()
        self.preserving_rank: dict[int, int] = {}

    def build_segment(self, segment_id: int):
        rng = self._rng
        positive = rng.random() < 0.5
        src_words = POSITIVE_EN if positive else NEGATIVE_EN
        tgt_words = POSITIVE_XX if positive else NEGATIVE_XX
        tgt_flipped = NEGATIVE_XX if positive else POSITIVE_XX

        k_senti = rng.randint(1, 3)
        picks = rng.sample(range(len(src_words)), k_senti)
        source_text = " ".join(
            rng.choices(FILLER_EN, k=3) + [src_words[i] for i in picks]
        )
        faithful = " ".join(
            rng.choices(FILLER_XX, k=3) + [tgt_words[i] for i in picks]
        )
        flipped = " ".join(
            rng.choices(FILLER_XX, k=3) + [tgt_flipped[i] for i in picks]
        )

        def neutral():
            return " ".join(rng.choices(FILLER_XX, k=rng.randint(3, 6)))

        num_candidates = rng.randint(4, 10)
        texts = [neutral() for _ in range(num_candidates)]
        if rng.random() < self.flip_fraction:
            self.flipped_ids.add(segment_id)
            rank = rng.randint(1, num_candidates - 1)
            texts[0] = flipped
            texts[rank] = faithful
            self.preserving_rank[segment_id] = rank
        else:
            texts[0] = faithful
        source = SourceSegment(id=segment_id, text=source_text, language="en")
        nbest = NBestList(
            source_id=segment_id,
            candidates=tuple(Candidate(rank=r, text=t) for r, t in enumerate(texts)),
        )
        return source, nbest


def test_synthetic_improvement_check(tmp_path):
    """200 synthetic segments, 30% with a sentiment flip at rank 0 and
    the faithful candidate lower down: the divergence-minimizing
    selection must strictly beat rank-0 decoding on mean divergence and
    recover the faithful candidate in at least 95% of corrupted
    segments, in under 5 seconds."""
    en_path = tmp_path / "en.tsv"
    en_path.write_text(
        "".join(f"{w}\t1\n" for w in POSITIVE_EN) + "".join(f"{w}\t-1\n" for w in NEGATIVE_EN),
        encoding="utf-8",
    )
    xx_path = tmp_path / "xx.tsv"
    xx_path.write_text(
        "".join(f"{w}\t1\n" for w in set(POSITIVE_XX))
        + "".join(f"{w}\t-1\n" for w in set(NEGATIVE_XX) - set(POSITIVE_XX)),
        encoding="utf-8",
    )
    source_scorer = LexiconScorer.from_file(en_path, language="en")
    target_scorer = LexiconScorer.from_file(xx_path, language="xx")

    backend = MockFlippingBackend(seed=1234, flip_fraction=0.3)
    sources, nbest_map = [], {}
    for i in range(200):
        source, nbest = backend.build_segment(i)
        sources.append(source)
        nbest_map[i] = nbest
    assert 30 <= len(backend.flipped_ids) <= 90

    start = time.perf_counter()
    results, summary = rerank_corpus(
        sources, nbest_map, RerankConfig(),
        source_scorer=source_scorer, target_scorer=target_scorer,
    )
    elapsed = time.perf_counter() - start

    assert summary.mean_selected_divergence < summary.mean_rank0_divergence
    recovered = sum(
        1 for r in results
        if r.source_id in backend.flipped_ids
        and r.selected_rank == backend.preserving_rank[r.source_id]
    )
    assert recovered >= 0.95 * len(backend.flipped_ids)
    assert elapsed < 5.0, f"corpus re-ranking took {elapsed:.3f}s"


def _mp_pearson(xs, ys):
    """Direct closed-form Pearson r and two-tailed p at 50 digits."""
    mp.dps = 50
    xs = [mpf(x) for x in xs]
    ys = [mpf(y) for y in ys]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    r = sxy / mp_sqrt(sxx * syy)
    df = n - 2
    t2 = r * r * df / (1 - r * r)
    p = mp_betainc(mpf(df) / 2, mpf(1) / 2, 0, df / (df + t2), regularized=True)
    return float(r), float(p)


def test_pearson_oracle():
    """100 random 8-50 point samples against the extended-precision
    direct-formula oracle: r within 1e-10, p within 1e-6; perfect-linear
    fixtures give exactly +-1."""
    rng = random.Random(31)
    for _ in range(100):
        n = rng.randint(8, 50)
        slope = rng.uniform(-2, 2)
        xs = [rng.uniform(-5, 5) for _ in range(n)]
        ys = [slope * x + rng.gauss(0, rng.uniform(0.2, 3)) for x in xs]
        r, p = pearson_r(PairedSamples(tuple(xs), tuple(ys)))
        r_mp, p_mp = _mp_pearson(xs, ys)
        assert abs(r - r_mp) <= 1e-10
        assert abs(p - p_mp) <= 1e-6

    r, p = pearson_r(PairedSamples((1, 2, 3, 4, 5, 6, 7, 8), (3, 5, 7, 9, 11, 13, 15, 17)))
    assert r == 1.0 and p == 0.0
    r, _ = pearson_r(PairedSamples((1, 2, 3, 4, 5, 6, 7, 8), (-1, -2, -3, -4, -5, -6, -7, -8)))
    assert r == -1.0


def test_krippendorff_oracle():
    """Hand-computed 4-item/2-annotator interval-alpha fixture within
    1e-9; perfect agreement is exactly 1.0; all-identical ratings are an
    undefined statistic, not alpha = 1."""
    fixture = AgreementMatrix(((1.0, 2.0), (2.0, 2.0), (3.0, 4.0), (1.0, 1.0)))
    assert krippendorff_alpha_interval(fixture) == pytest.approx(0.78125, abs=1e-9)

    perfect = AgreementMatrix(((1.0, 1.0), (4.0, 4.0), (0.5, 0.5), (2.0, 2.0)))
    assert krippendorff_alpha_interval(perfect) == 1.0

    identical = AgreementMatrix(((3.0, 3.0), (3.0, 3.0)))
    with pytest.raises(UndefinedStatisticError):
        krippendorff_alpha_interval(identical)


def test_bleu_criteria():
    """Identity corpora at 100, disjoint vocabulary at 0, the
    hand-counted two-sentence fixture within 1e-9, and invariance under
    20 random pair permutations."""
    hyps = ["The quick brown fox jumps.", "Over the lazy dog it went."]
    assert corpus_bleu(hyps, list(hyps)) == 100.0
    assert corpus_bleu(["aaa bbb ccc"], ["xxx yyy zzz"]) == 0.0
    assert corpus_bleu(HAND_HYPS, HAND_REFS) == pytest.approx(HAND_BLEU, abs=1e-9)

    rng = random.Random(4)
    hyps = [f"alpha bravo w{i} charlie delta" for i in range(10)]
    refs = [f"alpha bravo w{(i + 1) % 10} charlie echo" for i in range(10)]
    base = corpus_bleu(hyps, refs)
    pairs = list(zip(hyps, refs))
    for _ in range(20):
        rng.shuffle(pairs)
        h, r = zip(*pairs)
        assert corpus_bleu(list(h), list(r)) == base


def test_format_round_trips():
    """500 generated n-best lists and 500 generated evaluation records
    survive write-then-parse bit-for-bit; the '|||' parser rejects each
    of 10 canonical malformed lines with a located error."""
    rng = random.Random(8)
    total_lists = 0
    while total_lists < 500:
        nbest_map = random_nbest_map(rng, rng.randint(1, 8))
        total_lists += len(nbest_map)
        assert parse_jsonl_nbest(io.StringIO(write_jsonl_nbest(nbest_map))) == nbest_map

    systems = ("human", "baseline", "modified", "google")
    records = []
    for i in range(500):
        senti_div = rng.choice([0.0, 0.5, 1.0, 1.5, 2.0])
        records.append(EvaluationRecord(
            item_id=i % 60,
            system=rng.choice(systems),
            annotator_id=rng.choice(("a1", "a2", "a3")),
            accuracy=rng.randint(0, 10) / 2,
            senti_div=senti_div,
            reasons=frozenset() if senti_div == 0 else frozenset(
                rng.sample(("MI", "MO", "IG", "IR", "LT", "O"), rng.randint(0, 3))
            ),
            idiomatic=rng.random() < 0.4,
            language_pair=rng.choice(("en-es", "en-id")),
            note="free text, with commas" if rng.random() < 0.2 else "",
        ))
    buffer = io.StringIO()
    write_records_csv(records, buffer)
    assert read_records_csv(io.StringIO(buffer.getvalue())) == records

    malformed = [
        "0 ||| text ||| f",
        "0 ||| text",
        "just some text",
        "0 ||| text ||| f ||| -1 ||| extra",
        "x ||| text ||| f ||| -1",
        "1.5 ||| text ||| f ||| -1",
        "-2 ||| text ||| f ||| -1",
        "0 |||  ||| f ||| -1",
        "0 ||| text ||| f ||| not-a-number",
        "0 ||| text ||| f ||| 1..2",
    ]
    assert len(malformed) == 10
    for bad in malformed:
        with pytest.raises(ParseError) as err:
            parse_moses_nbest(io.StringIO("0 ||| ok ||| f ||| -1\n" + bad + "\n"))
        assert err.value.line == 2


PUBLISHED_DATA_DIR = Path(
    os.environ.get(
        "SENTISELECT_PUBLISHED_DATA",
        Path(__file__).resolve().parent.parent / "data" / "published_eval",
    )
)
PUBLISHED_RECORDS = PUBLISHED_DATA_DIR / "records_enes.csv"


@pytest.mark.skipif(
    not PUBLISHED_RECORDS.exists(),
    reason=f"published evaluation data not present at {PUBLISHED_RECORDS}",
)
def test_conditional_published_data_regression():
    """With the published en-es evaluation ratings converted into the
    records CSV (see README), the report reproduces the known means
    (baseline accuracy 2.06, divergence 0.92), the pooled correlation
    r = -0.764, and alpha 0.675/0.638, all within 0.01."""
    records = read_records_csv(PUBLISHED_RECORDS)
    report = build_report(records)
    means = report.means["all"]["baseline"]
    assert means["accuracy"] == pytest.approx(2.06, abs=0.01)
    assert means["senti_div"] == pytest.approx(0.92, abs=0.01)
    r, _ = report.pearson["all"]
    assert r == pytest.approx(-0.764, abs=0.01)
    assert report.alpha["all"]["accuracy"] == pytest.approx(0.675, abs=0.01)
    assert report.alpha["all"]["senti_div"] == pytest.approx(0.638, abs=0.01)

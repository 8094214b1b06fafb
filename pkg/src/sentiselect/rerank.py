"""Divergence-minimizing candidate selection.

Given a sentiment score for the source segment and one for each
candidate translation, the selected translation is the candidate whose
absolute score difference from the source is smallest. Candidates whose
divergence lands within ``tie_epsilon`` of the minimum count as tied;
the lowest rank among them wins, which preserves the translation
model's own preference and makes the whole pipeline collapse to
baseline decoding whenever the model-best candidate is already
divergence-minimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DataMismatchError, InvalidArgumentError, ScoringStageError, SentiSelectError
from .nbest import NBestList, SourceSegment
from .scoring.api import ScorerSpec, _as_scorer, score_text
from .scoring.core import SentimentScore

DEFAULT_TIE_EPSILON = 1e-12


@dataclass(frozen=True)
class RerankConfig:
    source_scorer: ScorerSpec | None = None
    target_scorer: ScorerSpec | None = None
    num_candidates: int = 10
    beam_size: int = 10
    tie_epsilon: float = DEFAULT_TIE_EPSILON

    def __post_init__(self):
        if self.num_candidates < 1:
            raise InvalidArgumentError(f"num_candidates {self.num_candidates} must be >= 1")
        if self.tie_epsilon < 0:
            raise InvalidArgumentError(f"tie_epsilon {self.tie_epsilon} must be >= 0")


@dataclass(frozen=True)
class CandidateDiagnostic:
    rank: int
    score: float
    divergence: float


@dataclass(frozen=True)
class RerankResult:
    source_id: int
    source_score: SentimentScore
    selected_rank: int
    selected_text: str
    selected_divergence: float
    per_candidate: tuple[CandidateDiagnostic, ...]
    tie_broken: bool

    def to_dict(self) -> dict:
        return {
            "source_id": self.source_id,
            "source_score": self.source_score.value,
            "source_scorer": self.source_score.scorer_id,
            "selected_rank": self.selected_rank,
            "selected_text": self.selected_text,
            "selected_divergence": self.selected_divergence,
            "tie_broken": self.tie_broken,
            "per_candidate": [
                {"rank": d.rank, "score": d.score, "divergence": d.divergence}
                for d in self.per_candidate
            ],
        }


def sentiment_divergence(source_score: float, candidate_score: float) -> float:
    """Absolute difference between candidate and source sentiment scores."""
    if not (math.isfinite(source_score) and math.isfinite(candidate_score)):
        raise InvalidArgumentError(
            f"scores must be finite, got {source_score!r} and {candidate_score!r}"
        )
    return abs(candidate_score - source_score)


def select_candidate(
    source_score: float,
    candidate_scores: list[float],
    tie_epsilon: float = DEFAULT_TIE_EPSILON,
) -> tuple[int, float, bool]:
    """Pick the divergence-minimizing candidate index.

    Returns (index, divergence, tie_broken). Among candidates whose
    divergence is within tie_epsilon of the minimum, the lowest index
    wins; tie_broken reports whether more than one candidate qualified.
    """
    if not candidate_scores:
        raise InvalidArgumentError("candidate_scores must be nonempty")
    divergences = [sentiment_divergence(source_score, s) for s in candidate_scores]
    minimum = min(divergences)
    qualifying = [i for i, d in enumerate(divergences) if d <= minimum + tie_epsilon]
    index = qualifying[0]
    return index, divergences[index], len(qualifying) > 1


def rerank(
    source: SourceSegment,
    nbest: NBestList,
    config: RerankConfig,
    source_scorer=None,
    target_scorer=None,
) -> RerankResult:
    """Score source and candidates, then select by minimum divergence.

    Scorers may be passed as resolved objects (preferred for corpus
    runs) or come from the config's ScorerSpecs. Scorer failures are
    re-raised tagged with the stage they occurred in.
    """
    src = source_scorer if source_scorer is not None else config.source_scorer
    tgt = target_scorer if target_scorer is not None else config.target_scorer
    if src is None or tgt is None:
        raise InvalidArgumentError("both a source scorer and a target scorer are required")

    try:
        source_score = score_text(source.text, src)
    except SentiSelectError as exc:
        raise ScoringStageError("source-scoring", source.id, str(exc)) from exc

    candidate_scores = []
    resolved_tgt = _as_scorer(tgt)
    for cand in nbest.candidates:
        try:
            candidate_scores.append(score_text(cand.text, resolved_tgt))
        except SentiSelectError as exc:
            raise ScoringStageError("candidate-scoring", source.id, str(exc)) from exc

    values = [s.value for s in candidate_scores]
    index, divergence, tie_broken = select_candidate(
        source_score.value, values, tie_epsilon=config.tie_epsilon
    )
    diagnostics = tuple(
        CandidateDiagnostic(
            rank=c.rank,
            score=values[i],
            divergence=sentiment_divergence(source_score.value, values[i]),
        )
        for i, c in enumerate(nbest.candidates)
    )
    return RerankResult(
        source_id=source.id,
        source_score=source_score,
        selected_rank=nbest.candidates[index].rank,
        selected_text=nbest.candidates[index].text,
        selected_divergence=divergence,
        per_candidate=diagnostics,
        tie_broken=tie_broken,
    )


@dataclass(frozen=True)
class CorpusSummary:
    num_segments: int
    mean_selected_divergence: float | None
    mean_rank0_divergence: float | None
    tie_break_fraction: float | None
    non_top_fraction: float | None
    source_scorer_id: str = ""
    target_scorer_id: str = ""

    def to_dict(self) -> dict:
        return {
            "num_segments": self.num_segments,
            "mean_selected_divergence": self.mean_selected_divergence,
            "mean_rank0_divergence": self.mean_rank0_divergence,
            "tie_break_fraction": self.tie_break_fraction,
            "non_top_fraction": self.non_top_fraction,
            "source_scorer_id": self.source_scorer_id,
            "target_scorer_id": self.target_scorer_id,
        }


def rerank_corpus(
    sources: list[SourceSegment],
    nbest_map: dict[int, NBestList],
    config: RerankConfig,
    source_scorer=None,
    target_scorer=None,
) -> tuple[list[RerankResult], CorpusSummary]:
    """Re-rank a whole corpus, preserving source order.

    Every source id must have an n-best list. The summary carries the
    mean selected divergence next to the rank-0 (baseline) mean, the
    tie-break fraction, and the fraction of segments where a non-top
    candidate was selected.
    """
    missing = [s.id for s in sources if s.id not in nbest_map]
    if missing:
        raise DataMismatchError(f"no n-best list for source ids {missing}", ids=missing)

    src = _as_scorer(source_scorer if source_scorer is not None else config.source_scorer)
    tgt = _as_scorer(target_scorer if target_scorer is not None else config.target_scorer)

    results = [rerank(s, nbest_map[s.id], config, source_scorer=src, target_scorer=tgt) for s in sources]

    if results:
        n = len(results)
        summary = CorpusSummary(
            num_segments=n,
            mean_selected_divergence=sum(r.selected_divergence for r in results) / n,
            mean_rank0_divergence=sum(r.per_candidate[0].divergence for r in results) / n,
            tie_break_fraction=sum(r.tie_broken for r in results) / n,
            non_top_fraction=sum(r.selected_rank != 0 for r in results) / n,
            source_scorer_id=getattr(src, "scorer_id", ""),
            target_scorer_id=getattr(tgt, "scorer_id", ""),
        )
    else:
        summary = CorpusSummary(
            num_segments=0,
            mean_selected_divergence=None,
            mean_rank0_divergence=None,
            tie_break_fraction=None,
            non_top_fraction=None,
            source_scorer_id=getattr(src, "scorer_id", ""),
            target_scorer_id=getattr(tgt, "scorer_id", ""),
        )
    return results, summary

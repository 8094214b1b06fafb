"""Rating aggregation, reason-code ranking, and the combined report.

The aggregation functions duck-type their records: anything with
``system``, ``accuracy``, ``senti_div``, ``reasons`` and ``idiomatic``
attributes works. Annotators are pooled, one observation per record.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from ..errors import InvalidArgumentError, ValidationError

#: Canonical order; also the tie-break order for frequency ranking.
REASON_CODES = ("MI", "MO", "IG", "IR", "LT", "O")
SYSTEMS = ("human", "baseline", "modified", "google")
MEASURES = ("accuracy", "senti_div")
SUBSETS = ("all", "idiomatic")


def _subset_records(records, subset: str):
    if subset == "all":
        return list(records)
    if subset == "idiomatic":
        return [r for r in records if r.idiomatic]
    raise InvalidArgumentError(f"unknown subset {subset!r}; expected one of {SUBSETS}")


def aggregate_ratings(records, subset: str = "all") -> dict[str, dict[str, float]]:
    """Mean accuracy and sentiment-divergence rating per system.

    Returns {system: {measure: mean}}; systems without records in the
    subset are absent rather than zero.
    """
    chosen = _subset_records(records, subset)
    by_system: dict[str, list] = {}
    for record in chosen:
        by_system.setdefault(record.system, []).append(record)
    means: dict[str, dict[str, float]] = {}
    for system, group in by_system.items():
        means[system] = {
            "accuracy": sum(r.accuracy for r in group) / len(group),
            "senti_div": sum(r.senti_div for r in group) / len(group),
        }
    return means


def reason_code_frequencies(records) -> dict[str, list[str]]:
    """Reason codes per system, most frequent first.

    Ties fall back to the canonical code order. Codes outside the
    canonical set are a validation error naming the offending record.
    """
    counts: dict[str, Counter] = {}
    for record in records:
        for code in record.reasons:
            if code not in REASON_CODES:
                raise ValidationError(
                    f"unknown reason code {code!r} in record "
                    f"(item {record.item_id}, system {record.system!r}, "
                    f"annotator {record.annotator_id!r})"
                )
            counts.setdefault(record.system, Counter())[code] += 1
    ranked: dict[str, list[str]] = {}
    for system, counter in counts.items():
        ranked[system] = sorted(counter, key=lambda c: (-counter[c], REASON_CODES.index(c)))
    return ranked


@dataclass
class MetricsReport:
    """Evaluation statistics in one place.

    bleu:    {system: {corpus_label: value}}          (0..100)
    pearson: {subset: (r, p)}                         (r in [-1,1], p in [0,1])
    alpha:   {subset: {measure: alpha}}               (<= 1)
    means:   {subset: {system: {measure: mean}}}
    top_reasons: {system: ranked reason codes}
    """

    bleu: dict[str, dict[str, float]] = field(default_factory=dict)
    pearson: dict[str, tuple[float, float]] = field(default_factory=dict)
    alpha: dict[str, dict[str, float]] = field(default_factory=dict)
    means: dict[str, dict[str, dict[str, float]]] = field(default_factory=dict)
    top_reasons: dict[str, list[str]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def validate(self) -> None:
        for system, per_corpus in self.bleu.items():
            for label, value in per_corpus.items():
                if not (0.0 <= value <= 100.0):
                    raise InvalidArgumentError(f"BLEU {system}/{label} = {value} outside [0, 100]")
        for subset, (r, p) in self.pearson.items():
            if not (-1.0 <= r <= 1.0):
                raise InvalidArgumentError(f"pearson r ({subset}) = {r} outside [-1, 1]")
            if not (0.0 <= p <= 1.0):
                raise InvalidArgumentError(f"p-value ({subset}) = {p} outside [0, 1]")
        for subset, per_measure in self.alpha.items():
            for measure, value in per_measure.items():
                if value > 1.0:
                    raise InvalidArgumentError(f"alpha {subset}/{measure} = {value} exceeds 1")

    def to_json(self, indent: int = 2) -> str:
        self.validate()
        payload = {
            "bleu": self.bleu,
            "pearson": {
                subset: {"r": r, "p": p} for subset, (r, p) in self.pearson.items()
            },
            "alpha": self.alpha,
            "means": self.means,
            "top_reasons": self.top_reasons,
            "notes": self.notes,
        }
        return json.dumps(payload, indent=indent, sort_keys=True)

    def to_table(self) -> str:
        """Aligned plain-text table: one row per system, the usual columns."""
        self.validate()
        headers = [
            "System",
            "BLEU(tatoeba)",
            "BLEU(all)",
            "BLEU(idiom.)",
            "Acc(all)",
            "SentiDiff(all)",
            "Acc(idiom.)",
            "SentiDiff(idiom.)",
            "Top-3",
        ]
        all_systems = set(self.bleu) | set(self.top_reasons)
        for per in self.means.values():
            all_systems.update(per)
        known = [s for s in SYSTEMS if s in all_systems]
        extra = sorted(all_systems - set(known))
        rows = []
        for system in known + extra:
            rows.append([
                system,
                self._fmt_bleu(system, "tatoeba"),
                self._fmt_bleu(system, "all"),
                self._fmt_bleu(system, "idiomatic"),
                self._fmt_mean("all", system, "accuracy"),
                self._fmt_mean("all", system, "senti_div"),
                self._fmt_mean("idiomatic", system, "accuracy"),
                self._fmt_mean("idiomatic", system, "senti_div"),
                ", ".join(self.top_reasons.get(system, [])[:3]) or "-",
            ])
        lines = [_format_row(headers, rows)]
        if self.pearson:
            lines.append("")
            lines.append("Pearson accuracy vs. sentiment divergence:")
            for subset in sorted(self.pearson):
                r, p = self.pearson[subset]
                lines.append(f"  {subset}: r = {r:+.3f} (p = {p:.3g})")
        if self.alpha:
            lines.append("")
            lines.append("Krippendorff alpha (interval):")
            for subset in sorted(self.alpha):
                cells = ", ".join(
                    f"{measure} = {value:.3f}" for measure, value in sorted(self.alpha[subset].items())
                )
                lines.append(f"  {subset}: {cells}")
        for note in self.notes:
            lines.append("")
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"

    def _has_system(self, system: str) -> bool:
        return (
            system in self.bleu
            or system in self.top_reasons
            or any(system in per for per in self.means.values())
        )

    def _fmt_bleu(self, system: str, label: str) -> str:
        value = self.bleu.get(system, {}).get(label)
        return "-" if value is None else f"{value:.2f}"

    def _fmt_mean(self, subset: str, system: str, measure: str) -> str:
        value = self.means.get(subset, {}).get(system, {}).get(measure)
        return "-" if value is None else f"{value:.2f}"


def _format_row(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells):
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()
    out = [fmt(headers), fmt(["-" * w for w in widths])]
    out.extend(fmt(row) for row in rows)
    return "\n".join(out)

"""Human-evaluation protocol: records, prompt sheets, and report assembly.

One evaluation record is a single annotator's judgment of one (item,
system) translation: an accuracy rating on a 0-5 scale and a perceived
sentiment-divergence rating on a 0-2 scale, both in half-point
increments, plus a multi-select set of reason codes. A sentiment
divergence of 0 means the sentiment did not change at all, which is
encoded as the empty reason set (and is only legal with one).

Prompt sheets are blinded: each prompt shows the source text and one
translation, never the system name. The index-to-system mapping goes to
a separate key file.
"""

from __future__ import annotations

import csv
import json
import logging
import random
from dataclasses import dataclass

from .errors import (
    DataMismatchError,
    InvalidArgumentError,
    ParseError,
    UndefinedStatisticError,
    ValidationError,
)
from .metrics import (
    AgreementMatrix,
    MetricsReport,
    PairedSamples,
    REASON_CODES,
    SUBSETS,
    SYSTEMS,
    aggregate_ratings,
    krippendorff_alpha_interval,
    pearson_r,
    reason_code_frequencies,
)

logger = logging.getLogger(__name__)

ACCURACY_RANGE = (0.0, 5.0)
SENTI_DIV_RANGE = (0.0, 2.0)

RECORDS_CSV_HEADER = [
    "item_id",
    "system",
    "annotator_id",
    "accuracy",
    "senti_div",
    "reasons",
    "idiomatic",
    "language_pair",
    "note",
]

#: Checklist shown under question 3, one line per reason code. The
#: "sentiment didn't change" option maps to the empty reason set.
REASON_CHECKLIST = {
    "MI": "The translation contained literal translation(s) of figurative source language",
    "MO": "The translation contained other types of mistranslated words",
    "IG": "The grammatical structure of the translation is incorrect",
    "IR": "The overall meaning of the source sentence changed substantially (even the gist is unrecoverable)",
    "LT": "The source sentence can't be properly translated to the target language",
    "O": "Other (please write in next to this)",
}


@dataclass(frozen=True)
class EvaluationRecord:
    item_id: int
    system: str
    annotator_id: str
    accuracy: float
    senti_div: float
    reasons: frozenset[str] = frozenset()
    idiomatic: bool = False
    language_pair: str = ""
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "reasons", frozenset(self.reasons))


def _on_half_grid(value: float, low: float, high: float) -> bool:
    return low <= value <= high and float(value) * 2 == round(float(value) * 2)


def validate_record(record: EvaluationRecord) -> EvaluationRecord:
    """Check every record invariant; raise with the full violation list."""
    violations = []
    if record.system not in SYSTEMS:
        violations.append(f"system {record.system!r} not in {SYSTEMS}")
    if not record.annotator_id:
        violations.append("annotator_id is empty")
    if not _on_half_grid(record.accuracy, *ACCURACY_RANGE):
        violations.append(
            f"accuracy {record.accuracy!r} must lie in [0, 5] in steps of 0.5"
        )
    if not _on_half_grid(record.senti_div, *SENTI_DIV_RANGE):
        violations.append(
            f"senti_div {record.senti_div!r} must lie in [0, 2] in steps of 0.5"
        )
    unknown = sorted(set(record.reasons) - set(REASON_CODES))
    if unknown:
        violations.append(f"unknown reason codes {unknown}")
    if record.senti_div == 0 and record.reasons:
        violations.append(
            "senti_div 0 means the sentiment did not change; reasons must be empty, "
            f"got {sorted(record.reasons)}"
        )
    if violations:
        raise ValidationError(
            f"invalid record (item {record.item_id}, system {record.system!r}, "
            f"annotator {record.annotator_id!r}): " + "; ".join(violations),
            violations=violations,
        )
    return record


@dataclass(frozen=True)
class EvaluationItem:
    item_id: int
    source_text: str
    translations: dict[str, str]
    idiomatic: bool = False

    def __post_init__(self):
        systems = frozenset(self.translations)
        if systems not in (frozenset(SYSTEMS), frozenset(SYSTEMS) - {"human"}):
            raise InvalidArgumentError(
                f"item {self.item_id}: translations must cover all of {SYSTEMS} "
                f"or all but 'human', got {sorted(systems)}"
            )
        if not self.source_text.strip():
            raise InvalidArgumentError(f"item {self.item_id}: empty source text")
        for system, text in self.translations.items():
            if not text.strip():
                raise InvalidArgumentError(f"item {self.item_id}: empty translation for {system!r}")


# ---------------------------------------------------------------------------
# File formats


def write_records_csv(records, stream_or_path) -> None:
    def _write(fh):
        writer = csv.writer(fh)
        writer.writerow(RECORDS_CSV_HEADER)
        for r in records:
            writer.writerow([
                r.item_id,
                r.system,
                r.annotator_id,
                _fmt_rating(r.accuracy),
                _fmt_rating(r.senti_div),
                ";".join(sorted(r.reasons, key=REASON_CODES.index)),
                "true" if r.idiomatic else "false",
                r.language_pair,
                r.note,
            ])

    if hasattr(stream_or_path, "write"):
        _write(stream_or_path)
    else:
        with open(stream_or_path, "w", encoding="utf-8", newline="") as fh:
            _write(fh)


def _fmt_rating(value: float) -> str:
    return f"{value:g}"


def read_records_csv(stream_or_path) -> list[EvaluationRecord]:
    if hasattr(stream_or_path, "read"):
        return _read_records(stream_or_path, source="<stream>")
    with open(stream_or_path, "r", encoding="utf-8", newline="") as fh:
        return _read_records(fh, source=str(stream_or_path))


def _read_records(fh, source: str) -> list[EvaluationRecord]:
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty records file", source=source) from None
    if header != RECORDS_CSV_HEADER:
        raise ParseError(
            f"bad header {header!r}, expected {RECORDS_CSV_HEADER!r}", line=1, source=source
        )
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(RECORDS_CSV_HEADER):
            raise ParseError(
                f"expected {len(RECORDS_CSV_HEADER)} columns, found {len(row)}",
                line=lineno,
                source=source,
            )
        try:
            record = EvaluationRecord(
                item_id=int(row[0]),
                system=row[1],
                annotator_id=row[2],
                accuracy=float(row[3]),
                senti_div=float(row[4]),
                reasons=frozenset(c for c in row[5].split(";") if c),
                idiomatic=_parse_bool(row[6], lineno, source),
                language_pair=row[7],
                note=row[8],
            )
        except ValueError as exc:
            raise ParseError(f"bad field value: {exc}", line=lineno, source=source) from None
        try:
            records.append(validate_record(record))
        except ValidationError as exc:
            raise ValidationError(f"{source}:line {lineno}: {exc}", violations=exc.violations) from None
    return records


def _parse_bool(raw: str, lineno: int, source: str) -> bool:
    if raw.lower() in ("true", "1", "yes"):
        return True
    if raw.lower() in ("false", "0", "no"):
        return False
    raise ParseError(f"bad boolean {raw!r}", line=lineno, source=source)


def write_items_jsonl(items, stream_or_path) -> None:
    def _write(fh):
        for item in items:
            fh.write(json.dumps({
                "item_id": item.item_id,
                "source_text": item.source_text,
                "translations": item.translations,
                "idiomatic": item.idiomatic,
            }, ensure_ascii=False) + "\n")

    if hasattr(stream_or_path, "write"):
        _write(stream_or_path)
    else:
        with open(stream_or_path, "w", encoding="utf-8") as fh:
            _write(fh)


def read_items_jsonl(stream_or_path) -> list[EvaluationItem]:
    if hasattr(stream_or_path, "read"):
        return _read_items(stream_or_path, source="<stream>")
    with open(stream_or_path, "r", encoding="utf-8") as fh:
        return _read_items(fh, source=str(stream_or_path))


def _read_items(lines, source: str) -> list[EvaluationItem]:
    items = []
    seen = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}", line=lineno, source=source) from None
        for key in ("item_id", "source_text", "translations"):
            if key not in obj:
                raise ParseError(f"missing field {key!r}", line=lineno, source=source)
        item_id = int(obj["item_id"])
        if item_id in seen:
            raise ParseError(f"duplicate item_id {item_id}", line=lineno, source=source)
        seen.add(item_id)
        try:
            items.append(EvaluationItem(
                item_id=item_id,
                source_text=str(obj["source_text"]),
                translations={str(k): str(v) for k, v in obj["translations"].items()},
                idiomatic=bool(obj.get("idiomatic", False)),
            ))
        except InvalidArgumentError as exc:
            raise ParseError(str(exc), line=lineno, source=source) from None
    return items


# ---------------------------------------------------------------------------
# Prompt sheets


def generate_prompt_sheet(items, shuffle_seed: int) -> tuple[str, dict[str, str]]:
    """Blinded prompts, one per (item, system), in seeded shuffle order.

    Returns (document, key) where the key maps the 1-based prompt index
    (as a string, for JSON) to the hidden system name.
    """
    pairs = []
    for item in items:
        for system in SYSTEMS:
            if system in item.translations:
                pairs.append((item, system))
    random.Random(shuffle_seed).shuffle(pairs)

    blocks = [
        "# Translation evaluation sheet",
        "",
        "For every prompt: rate the accuracy of the translation on a 0-5 scale "
        "(0 = awful, 2.5 = decent, 5 = flawless), rate the sentiment divergence "
        "on a 0-2 scale (0 = the sentiment perfectly matches, 2 = the sentiment "
        "is the opposite), and mark every statement that describes why the "
        "sentiment changed. Half-increments (0.5, 1.5, ...) are welcome.",
        "",
    ]
    key: dict[str, str] = {}
    for index, (item, system) in enumerate(pairs, start=1):
        key[str(index)] = system
        blocks.extend([
            f"## Prompt {index} (item {item.item_id})",
            "",
            f"Source: {item.source_text}",
            f"Translation: {item.translations[system]}",
            "",
            "1. Accuracy (0-5): ____",
            "2. Sentiment divergence (0-2): ____",
            "3. Mark all of the below which had an effect on the sentiment of the translation:",
        ])
        for code in REASON_CODES:
            blocks.append(f"   - [{code}] {REASON_CHECKLIST[code]}")
        blocks.append("   - [  ] The sentiment didn't change at all")
        blocks.append("")
    return "\n".join(blocks), key


# ---------------------------------------------------------------------------
# Report assembly


def build_report(records, items=None) -> MetricsReport:
    """Assemble means, reason rankings, Pearson r, and alpha per subset.

    With fewer than two annotators the alpha cells are omitted with a
    warning instead of failing. Pearson pools (accuracy, senti_div)
    pairs per subset; alpha treats each (item, system) as a unit and
    annotators as observers, separately per measure.
    """
    records = [validate_record(r) for r in records]
    if items is not None:
        by_id = {item.item_id: item for item in items}
        missing = sorted({r.item_id for r in records} - set(by_id))
        if missing:
            raise DataMismatchError(f"records reference unknown item ids {missing}", ids=missing)
        for r in records:
            if r.idiomatic != by_id[r.item_id].idiomatic:
                raise ValidationError(
                    f"record (item {r.item_id}, system {r.system!r}, annotator "
                    f"{r.annotator_id!r}) disagrees with the item's idiomatic flag"
                )

    report = MetricsReport()
    report.top_reasons = reason_code_frequencies(records)

    annotators = sorted({r.annotator_id for r in records})
    for subset in SUBSETS:
        chosen = [r for r in records if subset == "all" or r.idiomatic]
        if not chosen:
            continue
        report.means[subset] = aggregate_ratings(chosen, "all")

        try:
            samples = PairedSamples(
                xs=tuple(r.accuracy for r in chosen), ys=tuple(r.senti_div for r in chosen)
            )
            report.pearson[subset] = pearson_r(samples)
        except (InvalidArgumentError, UndefinedStatisticError) as exc:
            report.notes.append(f"pearson omitted for subset {subset!r}: {exc}")

        if len(annotators) < 2:
            logger.warning("only one annotator; Krippendorff alpha omitted")
            report.notes.append("alpha omitted: fewer than two annotators")
            continue
        for measure in ("accuracy", "senti_div"):
            matrix = _agreement_matrix(chosen, annotators, measure)
            if matrix is None:
                report.notes.append(
                    f"alpha omitted for {subset}/{measure}: not enough pairable ratings"
                )
                continue
            try:
                report.alpha.setdefault(subset, {})[measure] = krippendorff_alpha_interval(matrix)
            except (InvalidArgumentError, UndefinedStatisticError) as exc:
                report.notes.append(f"alpha undefined for {subset}/{measure}: {exc}")

    report.validate()
    return report


def _agreement_matrix(records, annotators, measure) -> AgreementMatrix | None:
    cells: dict[tuple[int, str], dict[str, float]] = {}
    for r in records:
        cells.setdefault((r.item_id, r.system), {})[r.annotator_id] = getattr(r, measure)
    rows = []
    for unit in sorted(cells):
        per_annotator = cells[unit]
        rows.append(tuple(per_annotator.get(a) for a in annotators))
    if not any(sum(v is not None for v in row) >= 2 for row in rows):
        return None
    return AgreementMatrix(values=tuple(rows))

"""The whole human-evaluation loop on simulated annotators.

Creates evaluation items, generates a blinded prompt sheet with its key
file, simulates two annotators filling it in, and assembles the final
report: per-system means on both subsets, reason-code rankings, the
accuracy/divergence correlation, and inter-annotator agreement.

Run:  python3 demos/evaluation_workflow.py
"""

import random
import tempfile
from pathlib import Path

from sentiselect.evalharness import (
    EvaluationItem,
    EvaluationRecord,
    build_report,
    generate_prompt_sheet,
    write_records_csv,
)
from sentiselect.metrics import SYSTEMS

# How good each system "really" is, on the 0-5 accuracy scale.
TRUE_QUALITY = {"human": 4.5, "google": 3.5, "modified": 3.0, "baseline": 2.0}


def make_items(n=12):
    items = []
    for i in range(n):
        items.append(EvaluationItem(
            item_id=i,
            source_text=f"source tweet number {i}",
            translations={s: f"{s}-style translation of tweet {i}" for s in SYSTEMS},
            idiomatic=i % 3 == 0,
        ))
    return items


def snap(value, low, high):
    return min(high, max(low, round(value * 2) / 2))


def simulate_annotator(rng, items, annotator_id):
    """Noisy ratings around each system's true quality; sentiment
    divergence moves inversely to accuracy."""
    records = []
    for item in items:
        for system in SYSTEMS:
            accuracy = snap(rng.gauss(TRUE_QUALITY[system], 0.6), 0.0, 5.0)
            senti_div = snap((5.0 - accuracy) * 0.35 + rng.gauss(0, 0.2), 0.0, 2.0)
            if senti_div == 0:
                reasons = frozenset()
            else:
                pool = ["MI", "MO", "IG", "O"] if item.idiomatic else ["MO", "IG", "LT", "O"]
                reasons = frozenset(rng.sample(pool, rng.randint(1, 2)))
            records.append(EvaluationRecord(
                item_id=item.item_id,
                system=system,
                annotator_id=annotator_id,
                accuracy=accuracy,
                senti_div=senti_div,
                reasons=reasons,
                idiomatic=item.idiomatic,
                language_pair="en-es",
            ))
    return records


def main():
    rng = random.Random(11)
    workdir = Path(tempfile.mkdtemp(prefix="sentiselect-eval-"))
    items = make_items()

    sheet, key = generate_prompt_sheet(items, shuffle_seed=7)
    (workdir / "prompts.md").write_text(sheet, encoding="utf-8")
    print(f"prompt sheet with {len(key)} blinded prompts -> {workdir / 'prompts.md'}")

    records = simulate_annotator(rng, items, "a1") + simulate_annotator(rng, items, "a2")
    write_records_csv(records, workdir / "records.csv")
    print(f"simulated {len(records)} ratings from 2 annotators -> {workdir / 'records.csv'}")
    print()

    report = build_report(records, items)
    print(report.to_table())


if __name__ == "__main__":
    main()

"""Command-line entry point.

Subcommands: score, rerank, train-scorer, make-prompts, report. Every
failure maps to a nonzero exit status with a machine-readable error
class on stderr; all randomness flows through the explicit --seed flag.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import PipelineConfig, load_pipeline_config
from .errors import (
    ConfigError,
    DataMismatchError,
    InvalidArgumentError,
    ParseError,
    ScoringStageError,
    SentiSelectError,
)
from .evalharness import (
    build_report,
    generate_prompt_sheet,
    read_items_jsonl,
    read_records_csv,
)
from .metrics import corpus_bleu
from .nbest import SourceSegment, MTBackendClient, parse_jsonl_nbest, parse_moses_nbest
from .rerank import rerank, rerank_corpus
from .scoring import ScorerSpec, resolve_scorer, save_ngram_model, score_text, train_ngram_scorer


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SentiSelectError as exc:
        json.dump({"error_class": exc.error_class, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1
    except OSError as exc:
        json.dump({"error_class": "io-error", "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentiselect",
        description=(
            "Re-rank machine-translation n-best lists by sentiment divergence, "
            "train desk-scale sentiment scorers, and run the human-evaluation toolkit."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="score texts and write a text/score TSV")
    p_score.add_argument("--input", required=True, help="text file, one text per line")
    p_score.add_argument("--output", default="-", help="output TSV path (default: stdout)")
    _add_scorer_flags(p_score, prefix="", required=True)
    p_score.set_defaults(func=cmd_score)

    p_rerank = sub.add_parser("rerank", help="select divergence-minimizing candidates")
    p_rerank.add_argument("--sources", required=True, help="JSONL of {id, text, language?}")
    group = p_rerank.add_mutually_exclusive_group(required=True)
    group.add_argument("--nbest", help="n-best file (JSONL or classic '|||' format)")
    group.add_argument("--backend", help="MT backend address to request candidates from")
    p_rerank.add_argument("--nbest-format", choices=["auto", "jsonl", "moses"], default="auto")
    p_rerank.add_argument("--target-lang", default="und", help="target language for --backend")
    p_rerank.add_argument("--config", help="pipeline config JSON")
    p_rerank.add_argument("--num-candidates", type=int)
    p_rerank.add_argument("--beam-size", type=int)
    p_rerank.add_argument("--tie-epsilon", type=float)
    p_rerank.add_argument(
        "--fallback-baseline",
        action="store_true",
        help="on scorer failure keep the rank-0 candidate instead of aborting",
    )
    p_rerank.add_argument("--output", required=True, help="results JSONL path")
    _add_scorer_flags(p_rerank, prefix="source-")
    _add_scorer_flags(p_rerank, prefix="target-")
    p_rerank.set_defaults(func=cmd_rerank)

    p_train = sub.add_parser("train-scorer", help="fit the n-gram logistic scorer")
    p_train.add_argument("--corpus", required=True, help="TSV of label<TAB>text, labels negative/positive")
    p_train.add_argument("--output", required=True, help="model artifact path (JSON)")
    p_train.add_argument("--ngram-orders", default=None, help="comma-separated, e.g. '1,2'")
    p_train.add_argument("--l2", type=float, default=None, help="L2 regularization strength")
    p_train.add_argument("--holdout-fraction", type=float, default=None)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.set_defaults(func=cmd_train_scorer)

    p_prompts = sub.add_parser("make-prompts", help="generate a blinded evaluation sheet")
    p_prompts.add_argument("--items", required=True, help="items JSONL")
    p_prompts.add_argument("--seed", type=int, default=0)
    p_prompts.add_argument("--output", required=True, help="prompt sheet path (Markdown)")
    p_prompts.add_argument("--key", required=True, help="key file path (JSON index->system)")
    p_prompts.set_defaults(func=cmd_make_prompts)

    p_report = sub.add_parser("report", help="aggregate ratings into a metrics report")
    p_report.add_argument("--records", required=True, help="evaluation records CSV")
    p_report.add_argument("--items", help="items JSONL for cross-checking")
    p_report.add_argument(
        "--bleu",
        nargs=4,
        action="append",
        metavar=("SYSTEM", "LABEL", "HYP", "REF"),
        help="add a BLEU cell from aligned hypothesis/reference files (repeatable)",
    )
    p_report.add_argument("--json", help="write the report as JSON to this path")
    p_report.add_argument("--table", default="-", help="write the plain-text table here (default: stdout)")
    p_report.set_defaults(func=cmd_report)

    return parser


def _add_scorer_flags(parser, prefix: str, required: bool = False):
    name = prefix.rstrip("-") or "scorer"
    parser.add_argument(f"--{prefix}backend", choices=["lexicon", "ngram-logistic", "score-file", "remote"],
                        required=required, help=f"{name} backend")
    parser.add_argument(f"--{prefix}language", default=None, help=f"{name} language tag")
    parser.add_argument(f"--{prefix}path", default=None, help=f"{name} lexicon/score-file/model path")
    parser.add_argument(f"--{prefix}address", default=None, help=f"{name} remote address")


def _spec_from_flags(args, prefix: str) -> ScorerSpec | None:
    def get(key):
        return getattr(args, (prefix + key).replace("-", "_"))

    backend = get("backend")
    if backend is None:
        return None
    language = get("language") or "und"
    parameters = {}
    if get("path"):
        parameters["path"] = get("path")
    if get("address"):
        parameters["address"] = get("address")
    return ScorerSpec(backend=backend, language=language, parameters=parameters)


def _open_out(path: str):
    return sys.stdout if path == "-" else open(path, "w", encoding="utf-8")


# ---------------------------------------------------------------------------


def cmd_score(args) -> int:
    spec = _spec_from_flags(args, "")
    scorer = resolve_scorer(spec)
    texts = [line.strip() for line in Path(args.input).read_text(encoding="utf-8").splitlines()]
    texts = [t for t in texts if t]
    out = _open_out(args.output)
    try:
        for text in texts:
            result = score_text(text, scorer)
            out.write(f"{text}\t{result.value}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _read_sources(path: str) -> list[SourceSegment]:
    segments = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                segments.append(SourceSegment(
                    id=int(obj["id"]), text=str(obj["text"]), language=str(obj.get("language", "und"))
                ))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad source line: {exc}", line=lineno, source=path) from None
    return segments


def _load_nbest(args, config: PipelineConfig, sources) -> dict:
    if args.nbest:
        path = Path(args.nbest)
        fmt = args.nbest_format
        if fmt == "auto":
            first = ""
            with path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        first = line
                        break
            fmt = "moses" if "|||" in first else "jsonl"
        with path.open("r", encoding="utf-8") as fh:
            parse = parse_moses_nbest if fmt == "moses" else parse_jsonl_nbest
            return parse(fh, max_candidates=max(config.num_candidates, config.beam_size))
    client = MTBackendClient(args.backend, timeout=config.request_timeout)
    return {
        s.id: client.request_candidates(
            s, args.target_lang, num_candidates=config.num_candidates, beam_size=config.beam_size
        )
        for s in sources
    }


def cmd_rerank(args) -> int:
    config = load_pipeline_config(args.config)
    for key in ("num_candidates", "beam_size", "tie_epsilon"):
        flag = getattr(args, key)
        if flag is not None:
            setattr(config, key, flag)
    source_spec = _spec_from_flags(args, "source-") or config.source_scorer
    target_spec = _spec_from_flags(args, "target-") or config.target_scorer
    if source_spec is None or target_spec is None:
        raise ConfigError("rerank needs both source and target scorers (flags or config file)")

    sources = _read_sources(args.sources)
    nbest_map = _load_nbest(args, config, sources)
    missing = [s.id for s in sources if s.id not in nbest_map]
    if missing:
        raise DataMismatchError(f"no n-best list for source ids {missing}", ids=missing)

    rerank_cfg = config.rerank_config()
    source_scorer = resolve_scorer(source_spec)
    target_scorer = resolve_scorer(target_spec)

    lines = []
    rows = []
    fallbacks = 0
    for segment in sources:
        try:
            result = rerank(segment, nbest_map[segment.id], rerank_cfg,
                            source_scorer=source_scorer, target_scorer=target_scorer)
            row = result.to_dict()
            rows.append(result)
        except ScoringStageError as exc:
            if not args.fallback_baseline:
                raise
            fallbacks += 1
            top = nbest_map[segment.id].candidates[0]
            row = {
                "source_id": segment.id,
                "selected_rank": top.rank,
                "selected_text": top.text,
                "fallback": True,
                "error": str(exc),
            }
        lines.append(json.dumps(row, ensure_ascii=False))

    Path(args.output).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")

    if rows:
        n = len(rows)
        summary = {
            "num_segments": len(sources),
            "num_fallbacks": fallbacks,
            "mean_selected_divergence": sum(r.selected_divergence for r in rows) / n,
            "mean_rank0_divergence": sum(r.per_candidate[0].divergence for r in rows) / n,
            "tie_break_fraction": sum(r.tie_broken for r in rows) / n,
            "non_top_fraction": sum(r.selected_rank != 0 for r in rows) / n,
        }
    else:
        summary = {"num_segments": len(sources), "num_fallbacks": fallbacks}
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_train_scorer(args) -> int:
    corpus = []
    with open(args.corpus, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise ParseError("expected 'label<TAB>text'", line=lineno, source=args.corpus)
            label, text = line.split("\t", 1)
            corpus.append((text, label))
    config = {"seed": args.seed}
    if args.ngram_orders is not None:
        config["ngram_orders"] = [int(n) for n in args.ngram_orders.split(",") if n.strip()]
    if args.l2 is not None:
        config["l2"] = args.l2
    if args.holdout_fraction is not None:
        config["holdout_fraction"] = args.holdout_fraction
    model, report = train_ngram_scorer(corpus, config)
    save_ngram_model(model, args.output)
    json.dump({
        "model": args.output,
        "train_accuracy": report.train_accuracy,
        "heldout_accuracy": report.heldout_accuracy,
        "num_train": report.num_train,
        "num_heldout": report.num_heldout,
    }, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_make_prompts(args) -> int:
    items = read_items_jsonl(args.items)
    sheet, key = generate_prompt_sheet(items, shuffle_seed=args.seed)
    Path(args.output).write_text(sheet, encoding="utf-8")
    Path(args.key).write_text(json.dumps(key, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {len(key)} prompts to {args.output} (key: {args.key})")
    return 0


def cmd_report(args) -> int:
    records = read_records_csv(args.records)
    items = read_items_jsonl(args.items) if args.items else None
    report = build_report(records, items)
    for system, label, hyp_path, ref_path in args.bleu or []:
        hyps = [l for l in Path(hyp_path).read_text(encoding="utf-8").splitlines() if l.strip()]
        refs = [l for l in Path(ref_path).read_text(encoding="utf-8").splitlines() if l.strip()]
        report.bleu.setdefault(system, {})[label] = corpus_bleu(hyps, refs)
    report.validate()
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
    out = _open_out(args.table)
    try:
        out.write(report.to_table())
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Service entry points: train a checkpoint, serve it."""

from __future__ import annotations

import argparse
import json
import sys

import uvicorn

from .app import create_app
from .data import load_labeled_tsv
from .inference import SentimentModel
from .training import TrainingConfig, fine_tune


def serve(checkpoint: str, address: str) -> None:
    """Run the scoring service for a checkpoint at host:port."""
    host, _, port = address.partition(":")
    app = create_app(SentimentModel.load(checkpoint))
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8765), log_level="info")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="scorer-service",
        description="Fine-tune small transformer sentiment classifiers and serve them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="fine-tune a checkpoint from a labeled TSV corpus")
    p_train.add_argument("--corpus", required=True, help="TSV of label<TAB>text")
    p_train.add_argument("--output", required=True, help="checkpoint directory")
    p_train.add_argument("--base-model", default="tiny-uncased")
    p_train.add_argument("--learning-rate", type=float, default=None,
                         help="override the default 2e-5 (use ~1e-2 when training from scratch)")
    p_train.add_argument("--epochs", type=int, default=None)
    p_train.add_argument("--restarts", type=int, default=None)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--keep-neutral", action="store_true",
                         help="keep neutral-labeled lines instead of dropping them")
    p_train.set_defaults(func=cmd_train)

    p_serve = sub.add_parser("serve", help="serve a checkpoint over HTTP")
    p_serve.add_argument("--checkpoint", required=True)
    p_serve.add_argument("--address", default="127.0.0.1:8765")
    p_serve.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


def cmd_train(args) -> int:
    examples = load_labeled_tsv(args.corpus, drop_neutral=not args.keep_neutral)
    overrides = {"base_model": args.base_model, "seed": args.seed}
    if args.learning_rate is not None:
        overrides["learning_rate"] = args.learning_rate
    if args.epochs is not None:
        overrides["epochs"] = args.epochs
    if args.restarts is not None:
        overrides["restarts"] = args.restarts
    result = fine_tune(examples, TrainingConfig(**overrides), args.output)
    json.dump({
        "checkpoint": result.checkpoint_dir,
        "model_identity": result.model_identity,
        "dev_accuracy": result.dev_accuracy,
        "restart_accuracies": result.restart_accuracies,
        "dev_majority_baseline": result.dev_majority_baseline,
        "num_train": result.num_train,
        "num_dev": result.num_dev,
    }, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_serve(args) -> int:
    serve(args.checkpoint, args.address)
    return 0


if __name__ == "__main__":
    sys.exit(main())

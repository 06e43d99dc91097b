"""Command line for training baseline models against a dataset directory."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .data import load_dataset_dir, load_splits_file
from .models import ARCHITECTURES, ModelConfig
from .training import train_and_write, train_model


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gnn-baselines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train one model on one split")
    p.add_argument("--dataset", required=True, help="dataset directory")
    p.add_argument("--splits", default=None,
                   help="splits.json (default: <dataset>/splits.json)")
    p.add_argument("--arch", required=True, choices=ARCHITECTURES)
    p.add_argument("--split", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num-layers", type=int, default=2)
    p.add_argument("--hidden-dim", type=int, default=512)
    p.add_argument("--dropout", type=float, default=0.2)
    p.add_argument("--heads", type=int, default=8)
    p.add_argument("--learning-rate", type=float, default=3e-5)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--sgc-power", type=int, default=2)
    p.add_argument("--out", required=True, help="predictions root directory")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    config = ModelConfig(
        architecture=args.arch, num_layers=args.num_layers,
        hidden_dim=args.hidden_dim, dropout=args.dropout, heads=args.heads,
        learning_rate=args.learning_rate, steps=args.steps,
        sgc_power=args.sgc_power, seed=args.seed)
    data = load_dataset_dir(args.dataset)
    splits_path = args.splits or str(Path(args.dataset) / "splits.json")
    splits = load_splits_file(splits_path)
    if not 0 <= args.split < len(splits):
        print(f"error: split {args.split} outside 0..{len(splits) - 1}",
              file=sys.stderr)
        return 1
    path = train_and_write(data, splits, args.split, config, args.out)
    print(json.dumps({"predictions": str(path)}))
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command-line entry point wiring all modules together.

Results go to stdout (or ``--out``); diagnostics and progress go to stderr.
Exit codes: 0 success, 1 validation/usage error, 2 I/O error. Output is
machine-readable JSON by default; ``--pretty`` switches to aligned text
where a command has a table form.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import dedup as dedup_mod
from . import evaluation, importer, metrics, minesweeper, splits as splits_mod, storage
from .errors import ValidationError

logger = logging.getLogger("heterobench")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the contract says 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ValidationError(message)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2), out)


def _load_splits_for(dataset_dir: str, override: str | None):
    path = Path(override) if override else Path(dataset_dir) / storage.SPLITS_FILE
    if not path.exists():
        raise ValidationError(f"no splits file at {path}; run `splits generate` first")
    return storage.load_splits(path)


def _cmd_import(args) -> int:
    boundaries = None
    if args.boundaries:
        boundaries = [float(x) for x in args.boundaries.split(",")]
    dataset, id_map = importer.import_raw(
        args.edges, args.labels, args.features,
        directed=args.directed, delimiter=args.delimiter,
        bucket_target=args.bucket_target, boundaries=boundaries,
        name=args.name)
    provenance = importer.import_provenance(
        args.edges, args.labels, args.features,
        directed=args.directed, bucket_target=args.bucket_target)
    storage.save_dataset(dataset, args.out, provenance=provenance)
    storage.write_json(Path(args.out) / "id_map.json", id_map)
    logger.info("imported %d nodes, %d edges -> %s",
                dataset.num_nodes, dataset.graph.num_edges, args.out)
    _emit_json({"nodes": dataset.num_nodes, "edges": dataset.graph.num_edges,
                "classes": dataset.num_classes, "out": str(args.out)}, None)
    return 0


def _cmd_stats(args) -> int:
    dataset = storage.load_dataset(args.dataset)
    report = metrics.stat_report(dataset)
    if args.pretty:
        _emit(report.as_table(), args.out)
    else:
        _emit_json(report.as_dict(), args.out)
    return 0


def _cmd_dedup_find(args) -> int:
    dataset = storage.load_dataset(args.dataset)
    report = dedup_mod.find_duplicates(dataset)
    _emit_json(report.as_dict(), args.out)
    return 0


def _cmd_dedup_filter(args) -> int:
    dataset = storage.load_dataset(args.dataset)
    if args.report:
        report = dedup_mod.DuplicateReport.from_dict(storage.read_json(Path(args.report)))
    else:
        report = dedup_mod.find_duplicates(dataset)
    filtered, old_to_new = dedup_mod.filter_duplicates(dataset, report)
    storage.save_dataset(filtered, args.out)
    storage.write_json(Path(args.out) / "index_map.json",
                       {"old_to_new": old_to_new.tolist()})

    splits_path = Path(args.dataset) / storage.SPLITS_FILE
    if splits_path.exists():
        original = storage.load_splits(splits_path)
        storage.save_splits(splits_mod.filter_split_set(original, old_to_new),
                            Path(args.out) / storage.SPLITS_FILE)
        logger.info("filtered existing splits alongside the dataset")
    _emit_json({"nodes": filtered.num_nodes,
                "removed": report.num_duplicates,
                "out": str(args.out)}, None)
    return 0


def _cmd_dedup_leakage(args) -> int:
    dataset = storage.load_dataset(args.dataset)
    split_set = _load_splits_for(args.dataset, args.splits)
    report = dedup_mod.find_duplicates(dataset)
    predictions = None
    if args.predictions:
        predictions = []
        for i, split in enumerate(split_set):
            path = Path(args.predictions) / storage.predictions_filename(i)
            preds = storage.load_predictions(path)
            rows = evaluation._rows_for(preds, split.test)
            predictions.append(np.argmax(preds.scores[rows], axis=1))
    leakage = dedup_mod.leakage_report(dataset, split_set, report, predictions)
    _emit_json(leakage.as_dict(), args.out)
    return 0


def _cmd_generate_minesweeper(args) -> int:
    config = minesweeper.MinesweeperConfig(
        rows=args.rows, cols=args.cols,
        mine_fraction=args.mine_fraction, hidden_fraction=args.hidden_fraction,
        seed=args.seed)
    dataset = minesweeper.generate_minesweeper(config)
    storage.save_dataset(dataset, args.out,
                         provenance={"generator": "minesweeper", "seed": args.seed,
                                     "rows": args.rows, "cols": args.cols,
                                     "mine_fraction": args.mine_fraction,
                                     "hidden_fraction": args.hidden_fraction})
    _emit_json({"nodes": dataset.num_nodes, "edges": dataset.graph.num_edges,
                "out": str(args.out)}, None)
    return 0


def _cmd_splits_generate(args) -> int:
    dataset = storage.load_dataset(args.dataset)
    split_set = splits_mod.generate_splits(dataset.num_nodes,
                                           num_splits=args.num_splits, seed=args.seed)
    out = args.out or str(Path(args.dataset) / storage.SPLITS_FILE)
    storage.save_splits(split_set, out)
    _emit_json({"num_splits": len(split_set), "seed": args.seed, "out": out}, None)
    return 0


def _cmd_eval_score(args) -> int:
    dataset = storage.load_dataset(args.dataset)
    split_set = _load_splits_for(args.dataset, args.splits)
    table = evaluation.score_predictions(dataset, split_set, args.predictions)
    if args.pretty:
        _emit(table.as_table(), args.out)
    else:
        _emit_json(table.as_dict(), args.out)
    return 0


def _cmd_eval_rank(args) -> int:
    obj = storage.read_json(Path(args.table))
    if "models" in obj:
        obj = obj["models"]
    means = {model: (value["mean"] if isinstance(value, dict) else float(value))
             for model, value in obj.items()}
    ranks = evaluation.rank_models(means)
    if args.pretty:
        width = max(len(m) for m in ranks)
        ordered = sorted(ranks.items(), key=lambda kv: (kv[1], kv[0]))
        _emit("\n".join(f"{m:<{width}}  {r}" for m, r in ordered), args.out)
    else:
        _emit_json(ranks, args.out)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="heterobench",
                     description="Audit, build, and score heterophilous "
                                 "node-classification benchmarks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("import", help="ingest raw edge/label/feature files")
    p.add_argument("--edges", required=True)
    p.add_argument("--labels", required=True,
                   help="per-node class labels, or regression targets with --bucket-target")
    p.add_argument("--features", default=None,
                   help="dense CSV or sparse-index JSON; omit for featureless datasets")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--bucket-target", type=int, default=None, metavar="K",
                   help="treat the label column as a regression target and "
                        "derive K equal-frequency classes")
    p.add_argument("--boundaries", default=None,
                   help="comma-separated explicit bucket upper edges (overrides quantiles)")
    p.add_argument("--name", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_import)

    p = sub.add_parser("stats", help="dataset statistics report")
    p.add_argument("dataset")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("dedup", help="duplicate-node auditing")
    dedup_sub = p.add_subparsers(dest="dedup_command", required=True)

    q = dedup_sub.add_parser("find", help="detect duplicate nodes")
    q.add_argument("dataset")
    q.add_argument("--out", default=None)
    q.set_defaults(func=_cmd_dedup_find)

    q = dedup_sub.add_parser("filter", help="remove duplicates into a new directory")
    q.add_argument("dataset")
    q.add_argument("--report", default=None, help="reuse a saved duplicate report")
    q.add_argument("--out", required=True)
    q.set_defaults(func=_cmd_dedup_filter)

    q = dedup_sub.add_parser("leakage",
                             help="test accuracy split by duplicate status")
    q.add_argument("dataset")
    q.add_argument("--splits", default=None)
    q.add_argument("--predictions", default=None,
                   help="per-split prediction CSVs; default is the "
                        "neighborhood-matching oracle")
    q.add_argument("--out", default=None)
    q.set_defaults(func=_cmd_dedup_leakage)

    p = sub.add_parser("generate", help="synthetic dataset generators")
    gen_sub = p.add_subparsers(dest="generator", required=True)
    q = gen_sub.add_parser("minesweeper")
    q.add_argument("--rows", type=int, default=100)
    q.add_argument("--cols", type=int, default=100)
    q.add_argument("--mine-fraction", type=float, default=0.2)
    q.add_argument("--hidden-fraction", type=float, default=0.5)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", required=True)
    q.set_defaults(func=_cmd_generate_minesweeper)

    p = sub.add_parser("splits", help="train/validation/test splits")
    splits_sub = p.add_subparsers(dest="splits_command", required=True)
    q = splits_sub.add_parser("generate")
    q.add_argument("dataset")
    q.add_argument("-n", "--num-splits", type=int, default=10)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", default=None, help="default: <dataset>/splits.json")
    q.set_defaults(func=_cmd_splits_generate)

    p = sub.add_parser("eval", help="score prediction files")
    eval_sub = p.add_subparsers(dest="eval_command", required=True)
    q = eval_sub.add_parser("score")
    q.add_argument("--dataset", required=True)
    q.add_argument("--splits", default=None)
    q.add_argument("--predictions", required=True)
    q.add_argument("--pretty", action="store_true")
    q.add_argument("--out", default=None)
    q.set_defaults(func=_cmd_eval_score)

    q = eval_sub.add_parser("rank")
    q.add_argument("--table", required=True,
                   help="JSON of per-model means, or an `eval score` result")
    q.add_argument("--pretty", action="store_true")
    q.add_argument("--out", default=None)
    q.set_defaults(func=_cmd_eval_rank)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command-line surface: train, predict, evaluate, benchmark, roc.

Exit codes: 0 success, 1 data/domain error (any package error), 2 usage
error (bad flags, unknown learner token). Every command is deterministic
given its flags and seed; the seed comes from --seed, then the BB_SEED
environment variable, then the documented default.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .data import load_dataset
from .errors import (
    BlanketBayesError,
    ConfigError,
    MissingValueError,
    SchemaError,
    ValueOutOfRangeError,
)
from .evaluation import (
    DEFAULT_SEED,
    build_report,
    report_summary,
    run_evaluation,
    write_report_csv,
    write_roc_csv,
    write_summary_json,
)
from .learners import LEARNER_NAMES, LearnerConfig, learn
from .model import fit, load_model, save_model
from .scoring import ScoreLedger, log_network_score


class _UsageError(Exception):
    """Flag-level misuse detected after argparse; maps to exit code 2."""


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("BB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"BB_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _parse_learners(text: str) -> list[str]:
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise _UsageError("--learners must name at least one learner")
    for token in tokens:
        if token not in LEARNER_NAMES:
            raise _UsageError(
                f"unknown learner '{token}' (choose from {', '.join(LEARNER_NAMES)})"
            )
    seen = set()
    ordered = []
    for token in tokens:
        if token not in seen:
            seen.add(token)
            ordered.append(token)
    return ordered


def _load_costs(path) -> np.ndarray:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([float(t) for t in line.replace(",", " ").split()])
            except ValueError:
                raise ConfigError(f"{path}: bad cost line {line!r}") from None
    if not rows:
        raise ConfigError(f"{path}: empty cost matrix")
    return np.array(rows, dtype=float)


def _read_case_rows(path):
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\r\n") for line in fh]
    lines = [line for line in lines if line.strip() != ""]
    if not lines:
        raise SchemaError(f"{path}: empty file")
    header = [t.strip() for t in lines[0].split(",")]
    rows = []
    for r, line in enumerate(lines[1:], start=1):
        cells = [t.strip() for t in line.split(",")]
        if len(cells) != len(header):
            raise SchemaError(
                f"{path}: row {r} has {len(cells)} cells, expected {len(header)}"
            )
        rows.append(cells)
    return header, rows


def _encode_cases_for_model(model, path) -> np.ndarray:
    """Encode a cases CSV against a trained model's variable specs.

    The class column may be absent (or hold anything) — its values are
    ignored. All other model variables must be present, with only known
    value labels."""
    header, rows = _read_case_rows(path)
    names = [spec.name for spec in model.variables]
    class_name = model.class_spec.name
    missing = [n for n in names if n not in header and n != class_name]
    if missing:
        raise SchemaError(f"{path}: missing columns {missing}")
    extra = [h for h in header if h not in names]
    if extra:
        raise SchemaError(f"{path}: unknown columns {extra}")
    position = {h: j for j, h in enumerate(header)}
    cases = np.zeros((len(rows), len(names)), dtype=np.int64)
    for i, spec in enumerate(model.variables):
        if i == model.class_index:
            continue
        j = position[spec.name]
        for r, row in enumerate(rows):
            token = row[j]
            if token in ("", "?"):
                raise MissingValueError(
                    f"{path}: missing value at row {r + 1}, column '{spec.name}'"
                )
            try:
                cases[r, i] = spec.index_of(token)
            except SchemaError:
                raise ValueOutOfRangeError(
                    f"{path}: row {r + 1} column '{spec.name}' has unknown "
                    f"value '{token}'"
                ) from None
    return cases


def cmd_train(args) -> int:
    dataset = load_dataset(args.data, args.class_column, schema_path=args.schema)
    config = LearnerConfig(max_parents=args.max_parents)
    ledger = ScoreLedger()
    structure = learn(args.learner, ledger, dataset, config)
    search_calls = ledger.g_calls
    score = log_network_score(ledger, dataset, structure)
    model = fit(dataset, structure)
    out = args.out or os.path.splitext(os.path.basename(args.data))[0] + ".model"
    save_model(model, out)
    print(f"g_calls: {search_calls}")
    print(f"log_network_score: {score!r}")
    print(f"model: {out}")
    return 0


def cmd_predict(args) -> int:
    model = load_model(args.model)
    cases = _encode_cases_for_model(model, args.data)
    costs = _load_costs(args.costs) if args.costs else None
    posteriors = model.batch_class_posteriors(cases)
    decisions = model.decide(posteriors, costs)
    labels = model.class_spec.value_labels
    lines = [",".join([f"p_{lab}" for lab in labels] + ["decision"])]
    for row, choice in zip(posteriors, decisions):
        cells = [repr(float(p)) for p in row] + [labels[int(choice)]]
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"predictions: {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _evaluate_one(dataset, learners, args, seed, collect_roc, positive_class):
    config = LearnerConfig(max_parents=args.max_parents)
    runs = []
    for name in learners:
        runs.append(
            run_evaluation(
                dataset,
                name,
                repetitions=args.reps,
                base_seed=seed,
                config=config,
                collect_roc=collect_roc,
                positive_class=positive_class,
            )
        )
    return build_report(runs)


def _write_report_files(report, out_dir) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_report_csv(report, os.path.join(out_dir, f"{report.dataset_name}_report.csv"))
    for res in report.results:
        if res.curve is not None:
            write_roc_csv(
                res.curve,
                os.path.join(out_dir, f"{report.dataset_name}_{res.learner}_roc.csv"),
            )


def _print_report(report) -> None:
    for res in report.results:
        star = " *" if res.best else ""
        print(
            f"{report.dataset_name} {res.learner}: "
            f"{100 * res.mean_accuracy:.2f} ± {100 * res.std_accuracy:.2f} "
            f"(g_calls {res.mean_g_calls:.1f}){star}"
        )


def cmd_evaluate(args) -> int:
    dataset = load_dataset(args.data, args.class_column, schema_path=args.schema)
    learners = _parse_learners(args.learners)
    seed = _resolve_seed(args)
    collect_roc = args.positive_class is not None or dataset.class_spec.arity == 2
    report = _evaluate_one(dataset, learners, args, seed, collect_roc, args.positive_class)
    _write_report_files(report, args.out)
    write_summary_json(
        {report.dataset_name: report_summary(report)},
        os.path.join(args.out, f"{report.dataset_name}_summary.json"),
        seed,
    )
    _print_report(report)
    return 0


def _parse_manifest(path):
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [t.strip() for t in line.split(",")]
            if len(parts) not in (2, 3):
                raise ConfigError(
                    f"{path}: manifest lines are 'data_path, class_column"
                    f"[, positive_class]', got {line!r}"
                )
            data_path = parts[0]
            if not os.path.isabs(data_path):
                data_path = os.path.join(base, data_path)
            positive = parts[2] if len(parts) == 3 and parts[2] not in ("", "-") else None
            entries.append((data_path, parts[1], positive))
    if not entries:
        raise ConfigError(f"{path}: manifest lists no datasets")
    return entries


def cmd_benchmark(args) -> int:
    if bool(args.manifest) == bool(args.data):
        raise _UsageError("benchmark needs exactly one of --manifest or --data")
    if args.manifest:
        entries = _parse_manifest(args.manifest)
    else:
        if args.class_column is None:
            raise _UsageError("--class is required with --data")
        entries = [(args.data, args.class_column, args.positive_class)]
    learners = _parse_learners(args.learners)
    seed = _resolve_seed(args)
    summaries = {}
    for data_path, class_column, positive in entries:
        dataset = load_dataset(data_path, class_column)
        report = _evaluate_one(dataset, learners, args, seed, True, positive)
        _write_report_files(report, args.out)
        summaries[report.dataset_name] = report_summary(report)
        _print_report(report)
    write_summary_json(summaries, os.path.join(args.out, "summary.json"), seed)
    return 0


def cmd_roc(args) -> int:
    dataset = load_dataset(args.data, args.class_column, schema_path=args.schema)
    learners = _parse_learners(args.learners)
    seed = _resolve_seed(args)
    report = _evaluate_one(dataset, learners, args, seed, True, args.positive_class)
    os.makedirs(args.out, exist_ok=True)
    for res in report.results:
        path = os.path.join(args.out, f"{report.dataset_name}_{res.learner}_roc.csv")
        write_roc_csv(res.curve, path)
        print(f"{report.dataset_name} {res.learner}: AUC {res.curve.auc:.4f} -> {path}")
    return 0


def _add_common(parser, *, single_learner=False, needs_class=True):
    parser.add_argument("--data", required=True, help="dataset CSV with a header row")
    if needs_class:
        parser.add_argument(
            "--class",
            dest="class_column",
            required=True,
            help="class column name or 0-based index",
        )
    parser.add_argument(
        "--schema", default=None, help="optional sidecar pinning value labels"
    )
    if single_learner:
        parser.add_argument("--learner", required=True, choices=LEARNER_NAMES)
    else:
        parser.add_argument(
            "--learners",
            default=",".join(LEARNER_NAMES),
            help="comma-separated learner subset (default: all four)",
        )
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--max-parents", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blanketbayes",
        description="Bayesian-network classifiers for discrete data: "
        "train, predict, and benchmark nb/tan/k2/mbbc.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="learn a structure and write a model file")
    _add_common(p, single_learner=True)
    p.add_argument("--out", default=None, help="model file path (default: <stem>.model)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="classify cases with a trained model")
    p.add_argument("--model", required=True, help="model file from train")
    p.add_argument("--data", required=True, help="cases CSV (class column optional)")
    p.add_argument("--costs", default=None, help="decision cost matrix file")
    p.add_argument("--out", default=None, help="predictions CSV (default: stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="repeated-split accuracy report for one dataset")
    _add_common(p)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--positive-class", default=None)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("benchmark", help="full report over a manifest of datasets")
    p.add_argument("--manifest", default=None, help="lines: data_path, class[, positive]")
    p.add_argument("--data", default=None, help="single dataset CSV (alternative)")
    p.add_argument("--class", dest="class_column", default=None)
    p.add_argument(
        "--learners", default=",".join(LEARNER_NAMES), help="comma-separated subset"
    )
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--max-parents", type=int, default=None)
    p.add_argument("--positive-class", default=None)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("roc", help="averaged ROC curves for one dataset")
    _add_common(p)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--positive-class", default=None)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_roc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BlanketBayesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

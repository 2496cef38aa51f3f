"""Benchmark harness: repeated train/test splits, accuracy statistics,
paired t-tests, ROC curves with vertical averaging, g-call speed
summaries, and a synthetic sampler for property tests.

Determinism contract: every public entry point is a pure function of its
arguments and seeds, and the writers format floats with repr(), so a
rerun with the same inputs produces byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.special import betainc

from .data import Dataset, split
from .errors import ConfigError, DegenerateLabelsError, SchemaError
from .learners import LearnerConfig, learn
from .model import ClassifierModel, fit
from .scoring import ScoreLedger

DEFAULT_SEED = 1729

# Below this many cases the train/test lottery is noisy enough to warrant
# five times the repetitions.
SMALL_DATASET_CASES = 300


def default_repetitions(num_cases: int) -> int:
    return 50 if num_cases < SMALL_DATASET_CASES else 10


@dataclass
class RocCurve:
    """Ordered (fp_rate, tp_rate) points, both coordinates nondecreasing,
    running from (0, 0) to (1, 1)."""

    points: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 2)

    @property
    def auc(self) -> float:
        return float(np.trapezoid(self.points[:, 1], self.points[:, 0]))

    def __eq__(self, other):
        if not isinstance(other, RocCurve):
            return NotImplemented
        return np.array_equal(self.points, other.points)


def roc_curve(scores, labels) -> RocCurve:
    """Sweep the positive-decision threshold down through the distinct
    scores, emitting one cumulative (FP-rate, TP-rate) point per step;
    instances tied on score move together. The curve is anchored at
    (0, 0) and ends at (1, 1)."""
    scores = np.asarray(scores, dtype=float).reshape(-1)
    labels = np.asarray(labels, dtype=bool).reshape(-1)
    if scores.shape != labels.shape:
        raise ConfigError("scores and labels must have equal length")
    positives = int(labels.sum())
    negatives = labels.size - positives
    if positives == 0 or negatives == 0:
        raise DegenerateLabelsError(
            "ROC needs at least one positive and one negative label"
        )
    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_labels = labels[order]
    tp = np.cumsum(sorted_labels)
    fp = np.cumsum(~sorted_labels)
    # last index of each tie block = the threshold step for that score
    steps = np.nonzero(np.diff(sorted_scores))[0]
    steps = np.concatenate([steps, [sorted_scores.size - 1]])
    points = np.empty((steps.size + 1, 2))
    points[0] = (0.0, 0.0)
    points[1:, 0] = fp[steps] / negatives
    points[1:, 1] = tp[steps] / positives
    return RocCurve(points)


def _interp_tp(curve: RocCurve, x: float) -> float:
    """tp at fp = x: the top of any vertical segment exactly at x,
    linear between breakpoints otherwise."""
    f = curve.points[:, 0]
    t = curve.points[:, 1]
    j = int(np.searchsorted(f, x, side="right")) - 1
    if f[j] == x:
        return float(t[j])
    span = f[j + 1] - f[j]
    w = (x - f[j]) / span
    return float(t[j] + w * (t[j + 1] - t[j]))


def average_roc(curves) -> RocCurve:
    """Vertical averaging on the 101-point FP grid {0, 0.01, ..., 1}:
    each curve contributes its interpolated tp at every grid fp, and the
    endpoints are forced to (0, 0) and (1, 1)."""
    curves = list(curves)
    if not curves:
        raise ConfigError("average_roc needs at least one curve")
    grid = np.linspace(0.0, 1.0, 101)
    mean_tp = np.zeros(grid.size)
    for k in range(1, grid.size - 1):
        mean_tp[k] = sum(_interp_tp(c, grid[k]) for c in curves) / len(curves)
    mean_tp[0] = 0.0
    mean_tp[-1] = 1.0
    return RocCurve(np.column_stack([grid, mean_tp]))


@dataclass
class EvaluationRun:
    """One learner's record over the repeated splits of one dataset."""

    dataset_name: str
    learner: str
    seeds: tuple[int, ...]
    accuracies: tuple[float, ...]
    g_calls: tuple[int, ...]
    curves: list[RocCurve] | None = None

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.accuracies))

    @property
    def std_accuracy(self) -> float:
        return float(np.std(self.accuracies, ddof=1))

    @property
    def mean_g_calls(self) -> float:
        return float(np.mean(self.g_calls))


def resolve_positive_class(dataset: Dataset, positive_class=None) -> int:
    """Positive-class value index for ROC. Binary classes default to
    value index 1; a multi-valued class must be named explicitly."""
    spec = dataset.class_spec
    if positive_class is None:
        if spec.arity == 2:
            return 1
        raise ConfigError(
            f"class '{spec.name}' has {spec.arity} values; "
            "name the ROC positive class explicitly"
        )
    try:
        return spec.index_of(positive_class)
    except SchemaError:
        raise ConfigError(
            f"positive class {positive_class!r} is not a value of "
            f"'{spec.name}' (values: {', '.join(spec.value_labels)})"
        ) from None


def run_evaluation(
    dataset: Dataset,
    learner: str,
    repetitions: int | None = None,
    base_seed: int = DEFAULT_SEED,
    config: LearnerConfig | None = None,
    collect_roc: bool = True,
    positive_class=None,
) -> EvaluationRun:
    """Repeatedly split, learn, fit, and score one learner.

    Split r uses seed base_seed + r, so two learners evaluated with the
    same base seed see byte-identical splits — that pairing is what makes
    the t-test in `build_report` valid.
    """
    if repetitions is None:
        repetitions = default_repetitions(dataset.num_cases)
    if repetitions < 2:
        raise ConfigError("repetitions must be at least 2")
    pos_index = resolve_positive_class(dataset, positive_class) if collect_roc else None

    seeds = tuple(base_seed + r for r in range(repetitions))
    accuracies = []
    calls = []
    curves = [] if collect_roc else None
    for seed in seeds:
        train, test = split(dataset, seed)
        ledger = ScoreLedger()
        structure = learn(learner, ledger, train, config)
        model = fit(train, structure)
        posteriors = model.batch_class_posteriors(test.cases)
        decisions = model.decide(posteriors)
        truth = test.cases[:, test.class_index]
        accuracies.append(float(np.mean(decisions == truth)))
        calls.append(ledger.g_calls)
        if collect_roc:
            curves.append(roc_curve(posteriors[:, pos_index], truth == pos_index))
    return EvaluationRun(
        dataset_name=dataset.name,
        learner=learner,
        seeds=seeds,
        accuracies=tuple(accuracies),
        g_calls=tuple(calls),
        curves=curves,
    )


def paired_t_indistinguishable(a, b, confidence: float = 0.99) -> bool:
    """True iff a two-sided paired t-test fails to reject equality.

    Zero-variance cases, where the statistic is undefined: identical
    vectors count as indistinguishable, a constant nonzero difference as
    distinguishable (the infinite-t convention).
    """
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.shape != b.shape:
        raise ConfigError("paired t-test needs equal-length accuracy lists")
    if a.size < 2:
        raise ConfigError("paired t-test needs at least two pairs")
    diff = a - b
    sd = float(np.std(diff, ddof=1))
    if sd == 0.0:
        return bool(np.all(diff == 0.0))
    t = float(np.mean(diff)) / (sd / np.sqrt(diff.size))
    df = diff.size - 1
    p_value = float(betainc(df / 2.0, 0.5, df / (df + t * t)))
    return p_value > 1.0 - confidence


def speed_report(runs) -> dict[str, float]:
    """Mean g-call count per learner over runs of a single dataset."""
    runs = list(runs)
    names = {run.dataset_name for run in runs}
    if len(names) > 1:
        raise ConfigError(f"speed_report mixes datasets: {sorted(names)}")
    return {run.learner: run.mean_g_calls for run in runs}


def sample_dataset(model: ClassifierModel, m: int, seed: int) -> Dataset:
    """Draw m cases by ancestral sampling in topological order.

    Sampling inverts each row's CDF with one uniform draw per case; the
    uniforms are consumed node by node in topological order, so equal
    seeds give equal datasets regardless of how the tables are stored.
    """
    rng = np.random.default_rng(seed)
    n = model.num_variables
    cases = np.zeros((m, n), dtype=np.int64)
    for node in model.structure.topological_order():
        cpt = model.cpts[node]
        u = rng.random(m)
        if not cpt.parents:
            rows = cpt.lookup(())[None, :]
            inverse = np.zeros(m, dtype=np.int64)
        else:
            sub = cases[:, cpt.parents]
            uniq, inverse = np.unique(sub, axis=0, return_inverse=True)
            inverse = inverse.reshape(-1)
            rows = np.stack([cpt.lookup(tuple(row)) for row in uniq])
        cum = np.cumsum(rows, axis=1)[inverse]
        cases[:, node] = np.minimum(
            (cum < u[:, None]).sum(axis=1), cpt.arity - 1
        )
    return Dataset(model.variables, cases, model.class_index, name="sampled")


@dataclass
class LearnerResult:
    """One learner's row in a benchmark report."""

    learner: str
    mean_accuracy: float
    std_accuracy: float
    mean_g_calls: float
    best: bool
    curve: RocCurve | None = None


@dataclass
class BenchmarkReport:
    """All learners' results on one dataset, with the pairwise
    significance verdicts that justify the best flags."""

    dataset_name: str
    results: list[LearnerResult]
    indistinguishable: dict[tuple[str, str], bool] = field(default_factory=dict)

    def result(self, learner: str) -> LearnerResult:
        for res in self.results:
            if res.learner == learner:
                return res
        raise KeyError(learner)

    @property
    def best_learners(self) -> tuple[str, ...]:
        return tuple(res.learner for res in self.results if res.best)


def build_report(runs, confidence: float = 0.99) -> BenchmarkReport:
    """Means, sample standard deviations, pairwise paired t-tests, and
    best flags for all learners evaluated on one dataset.

    Best flags: take the learner b with the highest mean and the set S of
    learners indistinguishable from b; flag b, plus every member of S
    whose mean strictly exceeds every learner outside S.
    """
    runs = list(runs)
    if not runs:
        raise ConfigError("build_report needs at least one run")
    names = {run.dataset_name for run in runs}
    if len(names) > 1:
        raise ConfigError(f"build_report mixes datasets: {sorted(names)}")
    seed_sets = {run.seeds for run in runs}
    if len(seed_sets) > 1:
        raise ConfigError("runs must share split seeds for paired comparison")

    by_learner = {run.learner: run for run in runs}
    learners = [run.learner for run in runs]
    verdicts: dict[tuple[str, str], bool] = {}
    for la in learners:
        for lb in learners:
            if la != lb:
                verdicts[(la, lb)] = paired_t_indistinguishable(
                    by_learner[la].accuracies, by_learner[lb].accuracies, confidence
                )

    means = {name: by_learner[name].mean_accuracy for name in learners}
    top = max(learners, key=lambda name: means[name])
    tied = {name for name in learners if name == top or verdicts[(name, top)]}
    outside = [name for name in learners if name not in tied]
    flagged = {top}
    for name in tied:
        if all(means[name] > means[other] for other in outside):
            flagged.add(name)

    results = []
    for name in learners:
        run = by_learner[name]
        curve = average_roc(run.curves) if run.curves else None
        results.append(
            LearnerResult(
                learner=name,
                mean_accuracy=run.mean_accuracy,
                std_accuracy=run.std_accuracy,
                mean_g_calls=run.mean_g_calls,
                best=name in flagged,
                curve=curve,
            )
        )
    return BenchmarkReport(runs[0].dataset_name, results, verdicts)


def write_report_csv(report: BenchmarkReport, path) -> None:
    lines = ["learner,mean_acc,std_acc,mean_g_calls,best_flag"]
    for res in report.results:
        lines.append(
            f"{res.learner},{res.mean_accuracy!r},{res.std_accuracy!r},"
            f"{res.mean_g_calls!r},{int(res.best)}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_roc_csv(curve: RocCurve, path) -> None:
    lines = ["fp,tp"]
    for fp_rate, tp_rate in curve.points:
        lines.append(f"{float(fp_rate)!r},{float(tp_rate)!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def report_summary(report: BenchmarkReport) -> dict:
    """JSON-ready digest of one dataset's report."""
    return {
        "dataset": report.dataset_name,
        "learners": {
            res.learner: {
                "mean_acc": res.mean_accuracy,
                "std_acc": res.std_accuracy,
                "mean_g_calls": res.mean_g_calls,
                "best": res.best,
                "auc": res.curve.auc if res.curve is not None else None,
            }
            for res in report.results
        },
        "indistinguishable": {
            f"{la}|{lb}": verdict
            for (la, lb), verdict in sorted(report.indistinguishable.items())
        },
        "best": list(report.best_learners),
    }


def write_summary_json(summaries, path, seed: int) -> None:
    payload = {"seed": seed, "reports": summaries}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")

"""Bayesian-network classifiers for discrete data.

Four structure learners over a shared Bayesian scoring core — naive
Bayes, tree-augmented naive Bayes, greedy ordered search, and a
Markov-blanket construction — plus smoothed parameter estimation,
posterior classification, and a benchmark harness with paired
significance tests and averaged ROC curves.
"""

from .data import (
    Dataset,
    SplitPlan,
    VariableSpec,
    load_dataset,
    load_schema,
    split,
    split_plan,
)
from .errors import (
    BlanketBayesError,
    ConfigError,
    CycleError,
    DatasetTooSmallError,
    DegenerateLabelsError,
    DuplicateArcError,
    InvalidOrderingError,
    MissingValueError,
    SchemaError,
    ValueOutOfRangeError,
)
from .evaluation import (
    DEFAULT_SEED,
    BenchmarkReport,
    EvaluationRun,
    LearnerResult,
    RocCurve,
    average_roc,
    build_report,
    default_repetitions,
    paired_t_indistinguishable,
    report_summary,
    resolve_positive_class,
    roc_curve,
    run_evaluation,
    sample_dataset,
    speed_report,
    write_report_csv,
    write_roc_csv,
    write_summary_json,
)
from .graph import (
    NetworkStructure,
    structure_from_text,
    structure_to_text,
)
from .learners import (
    LEARNER_NAMES,
    LearnerConfig,
    MarkovPartition,
    gbn_ordering,
    learn,
    learn_k2,
    learn_mbbc,
    learn_naive_bayes,
    learn_tan,
    mbbc_step1,
    mbbc_step2,
    mbbc_step3,
)
from .model import (
    ClassifierModel,
    ConditionalProbabilityTable,
    estimate_cpts,
    fit,
    load_model,
    model_from_text,
    model_to_text,
    save_model,
)
from .scoring import (
    ScoreLedger,
    SufficientStats,
    count_stats,
    log_g,
    log_network_score,
    log_score_ratio,
)
from .tictactoe import endgame_dataset, write_endgame_csv

__version__ = "0.1.0"

__all__ = [
    "BenchmarkReport",
    "BlanketBayesError",
    "ClassifierModel",
    "ConditionalProbabilityTable",
    "ConfigError",
    "CycleError",
    "DEFAULT_SEED",
    "Dataset",
    "DatasetTooSmallError",
    "DegenerateLabelsError",
    "DuplicateArcError",
    "EvaluationRun",
    "InvalidOrderingError",
    "LEARNER_NAMES",
    "LearnerConfig",
    "LearnerResult",
    "MarkovPartition",
    "MissingValueError",
    "NetworkStructure",
    "RocCurve",
    "SchemaError",
    "ScoreLedger",
    "SplitPlan",
    "SufficientStats",
    "ValueOutOfRangeError",
    "VariableSpec",
    "average_roc",
    "build_report",
    "count_stats",
    "default_repetitions",
    "endgame_dataset",
    "estimate_cpts",
    "fit",
    "gbn_ordering",
    "learn",
    "learn_k2",
    "learn_mbbc",
    "learn_naive_bayes",
    "learn_tan",
    "load_dataset",
    "load_model",
    "load_schema",
    "log_g",
    "log_network_score",
    "log_score_ratio",
    "mbbc_step1",
    "mbbc_step2",
    "mbbc_step3",
    "model_from_text",
    "model_to_text",
    "paired_t_indistinguishable",
    "report_summary",
    "resolve_positive_class",
    "roc_curve",
    "run_evaluation",
    "sample_dataset",
    "save_model",
    "speed_report",
    "split",
    "split_plan",
    "structure_from_text",
    "structure_to_text",
    "write_endgame_csv",
    "write_report_csv",
    "write_roc_csv",
    "write_summary_json",
]

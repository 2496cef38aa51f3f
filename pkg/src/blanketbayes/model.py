"""Parameter estimation and classification.

A fitted model couples a network structure with one conditional
probability table per node. Probabilities use add-one smoothing, so
every table entry is strictly positive and predictions never hit a log
of zero. Parent instantiations that never occurred in training fall
back to a uniform distribution at query time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .data import Dataset, VariableSpec
from .errors import ConfigError, SchemaError, ValueOutOfRangeError
from .graph import NetworkStructure, structure_from_text, structure_to_text
from .scoring import count_stats


@dataclass
class ConditionalProbabilityTable:
    """Smoothed P(node | parents), keyed by parent value-index tuples.

    Only instantiations observed during estimation are stored; `lookup`
    answers anything else with the uniform distribution.
    """

    node: int
    arity: int
    parents: tuple[int, ...]
    table: dict[tuple[int, ...], np.ndarray] = field(default_factory=dict)

    def lookup(self, parent_values: tuple[int, ...]) -> np.ndarray:
        row = self.table.get(tuple(int(v) for v in parent_values))
        if row is None:
            return np.full(self.arity, 1.0 / self.arity)
        return row


def estimate_cpts(dataset: Dataset, structure: NetworkStructure):
    """One table per node: (count + 1) / (instantiation total + arity)."""
    cpts = []
    arities = dataset.arities()
    for node in range(dataset.num_variables):
        parents = tuple(sorted(structure.parents[node]))
        stats = count_stats(dataset, node, parents)
        r = arities[node]
        table = {}
        for inst, counts in stats.instantiations.items():
            table[inst] = (counts + 1.0) / (counts.sum() + r)
        cpts.append(ConditionalProbabilityTable(node, int(r), parents, table))
    return cpts


def _log_prob_column(cpt, cases):
    """log P(value | parents) for every case row, vectorized over the
    distinct parent instantiations actually present."""
    vals = cases[:, cpt.node]
    if not cpt.parents:
        return np.log(cpt.lookup(()))[vals]
    sub = cases[:, cpt.parents]
    uniq, inverse = np.unique(sub, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    rows = np.empty((uniq.shape[0], cpt.arity))
    for j in range(uniq.shape[0]):
        rows[j] = cpt.lookup(tuple(uniq[j]))
    return np.log(rows)[inverse, vals]


@dataclass
class ClassifierModel:
    """A structure, its tables, and the variable specs needed to decode
    and encode cases."""

    variables: tuple[VariableSpec, ...]
    class_index: int
    structure: NetworkStructure
    cpts: list[ConditionalProbabilityTable]

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def class_spec(self) -> VariableSpec:
        return self.variables[self.class_index]

    def _check_cases(self, cases: np.ndarray) -> np.ndarray:
        cases = np.asarray(cases, dtype=np.int64)
        if cases.ndim == 1:
            cases = cases.reshape(1, -1)
        if cases.ndim != 2 or cases.shape[1] != self.num_variables:
            raise ValueOutOfRangeError(
                f"case matrix must have {self.num_variables} columns, got shape {cases.shape}"
            )
        for i, spec in enumerate(self.variables):
            if i == self.class_index:
                continue  # class column is overwritten during scoring
            column = cases[:, i]
            if column.min(initial=0) < 0 or column.max(initial=0) >= spec.arity:
                raise ValueOutOfRangeError(
                    f"column '{spec.name}' contains value indices outside 0..{spec.arity - 1}"
                )
        return cases

    def batch_class_posteriors(self, cases: np.ndarray) -> np.ndarray:
        """Posterior over class values for each case row, shape (m, r_class).

        The joint factorizes into tables that mention the class (the
        class's own and those of its children) and tables that do not;
        the latter are evaluated once since they cancel in the
        normalization anyway.
        """
        cases = self._check_cases(cases)
        c = self.class_index
        r_c = self.variables[c].arity
        m = cases.shape[0]
        class_family = [
            cpt for cpt in self.cpts if cpt.node == c or c in cpt.parents
        ]
        rest = [cpt for cpt in self.cpts if cpt.node != c and c not in cpt.parents]
        log_joint = np.zeros((m, r_c))
        for t in range(r_c):
            work = cases.copy()
            work[:, c] = t
            for cpt in class_family:
                log_joint[:, t] += _log_prob_column(cpt, work)
        shared = np.zeros(m)
        for cpt in rest:
            shared += _log_prob_column(cpt, cases)
        log_joint += shared[:, None]
        return np.exp(log_joint - logsumexp(log_joint, axis=1, keepdims=True))

    def class_posterior(self, case) -> np.ndarray:
        return self.batch_class_posteriors(np.asarray(case).reshape(1, -1))[0]

    def decide(self, posteriors: np.ndarray, costs=None) -> np.ndarray:
        """Pick a class per posterior row: highest probability, or lowest
        expected cost when a cost matrix (row = chosen, column = true) is
        given. Ties go to the lowest class index either way."""
        posteriors = np.atleast_2d(np.asarray(posteriors, dtype=float))
        r_c = self.variables[self.class_index].arity
        if posteriors.shape[1] != r_c:
            raise ConfigError(
                f"posterior rows must have {r_c} entries, got {posteriors.shape[1]}"
            )
        if costs is None:
            return np.argmax(posteriors, axis=1)
        costs = np.asarray(costs, dtype=float)
        if costs.shape != (r_c, r_c) or not np.all(np.isfinite(costs)):
            raise ConfigError(
                f"cost matrix must be finite with shape ({r_c}, {r_c})"
            )
        expected = posteriors @ costs.T
        return np.argmin(expected, axis=1)

    def predict(self, cases: np.ndarray, costs=None) -> np.ndarray:
        return self.decide(self.batch_class_posteriors(cases), costs)


def fit(dataset: Dataset, structure: NetworkStructure) -> ClassifierModel:
    """Estimate every table for the given structure."""
    if structure.num_nodes != dataset.num_variables:
        raise ConfigError(
            f"structure has {structure.num_nodes} nodes, dataset has "
            f"{dataset.num_variables} variables"
        )
    return ClassifierModel(
        variables=dataset.variables,
        class_index=dataset.class_index,
        structure=structure,
        cpts=estimate_cpts(dataset, structure),
    )


def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def model_to_text(model: ClassifierModel) -> str:
    """Serialize a model to the sectioned text format.

    Probabilities are written with 17 significant digits, which
    round-trips float64 exactly: a saved and reloaded model makes
    bit-identical decisions.
    """
    names = [spec.name for spec in model.variables]
    lines = [f"class: {names[model.class_index]}"]
    lines.append("variables:")
    for spec in model.variables:
        lines.append(f"{spec.name}: {','.join(spec.value_labels)}")
    lines.append("structure:")
    lines.append(structure_to_text(model.structure, names).rstrip("\n"))
    lines.append("cpts:")
    for cpt in model.cpts:
        for inst in sorted(cpt.table):
            probs = " ".join(_format_float(p) for p in cpt.table[inst])
            inst_text = " ".join(str(v) for v in inst)
            lines.append(f"{names[cpt.node]} | {inst_text} : {probs}")
    return "\n".join(lines) + "\n"


def model_from_text(text: str) -> ClassifierModel:
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    lines = [ln for ln in lines if ln.strip()]
    if not lines or not lines[0].startswith("class:"):
        raise SchemaError("model text must begin with a 'class:' line")
    class_name = lines[0].partition(":")[2].strip()

    sections: dict[str, list[str]] = {"variables": [], "structure": [], "cpts": []}
    current = None
    for ln in lines[1:]:
        stripped = ln.strip()
        if stripped in ("variables:", "structure:", "cpts:"):
            current = stripped[:-1]
            continue
        if current is None:
            raise SchemaError(f"unexpected line before any section: {ln!r}")
        sections[current].append(stripped)

    specs = []
    for ln in sections["variables"]:
        name, sep, labels = ln.partition(":")
        if not sep:
            raise SchemaError(f"malformed variable line: {ln!r}")
        specs.append(
            VariableSpec(name.strip(), tuple(s.strip() for s in labels.split(",")))
        )
    names = [spec.name for spec in specs]
    if class_name not in names:
        raise SchemaError(f"class variable '{class_name}' not among the variables")
    class_index = names.index(class_name)

    try:
        structure, struct_names = structure_from_text(
            "\n".join(sections["structure"]) + "\n"
        )
    except ValueError as exc:
        raise SchemaError(f"bad structure section: {exc}") from None
    if struct_names != names:
        raise SchemaError("structure section names do not match the variables section")
    structure.class_index = class_index

    cpts = [
        ConditionalProbabilityTable(
            node, specs[node].arity, tuple(sorted(structure.parents[node]))
        )
        for node in range(len(specs))
    ]
    for ln in sections["cpts"]:
        head, sep, prob_text = ln.partition(" : ")
        if not sep:
            raise SchemaError(f"malformed table line: {ln!r}")
        name, bar, inst_text = head.partition(" | ")
        if not bar:
            raise SchemaError(f"malformed table line: {ln!r}")
        name = name.strip()
        if name not in names:
            raise SchemaError(f"table line for unknown variable '{name}'")
        node = names.index(name)
        cpt = cpts[node]
        try:
            inst = tuple(int(v) for v in inst_text.split())
            probs = np.array([float(v) for v in prob_text.split()], dtype=float)
        except ValueError:
            raise SchemaError(f"unparseable table line: {ln!r}") from None
        if len(inst) != len(cpt.parents):
            raise SchemaError(
                f"table line for '{name}' has {len(inst)} parent values, "
                f"expected {len(cpt.parents)}"
            )
        if probs.shape[0] != cpt.arity or not np.all(probs > 0.0):
            raise SchemaError(
                f"table line for '{name}' needs {cpt.arity} positive probabilities"
            )
        cpt.table[inst] = probs
    return ClassifierModel(tuple(specs), class_index, structure, cpts)


def save_model(model: ClassifierModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(model_to_text(model))


def load_model(path) -> ClassifierModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_text(fh.read())

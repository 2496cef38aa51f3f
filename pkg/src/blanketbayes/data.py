"""Dataset ingestion, categorical encoding, and train/test splitting.

All variables are discrete. A dataset is an m x n matrix of value indices
plus per-column value labels; one column is designated as the class. Value
indices are assigned by lexicographically sorting each column's distinct
tokens over the whole file, so any split of the same file shares one
encoding and a value seen only in the held-out third still has a table
slot.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigError,
    DatasetTooSmallError,
    MissingValueError,
    SchemaError,
)

MISSING_TOKENS = ("", "?")


@dataclass(frozen=True)
class VariableSpec:
    """One discrete variable: a name and its ordered value labels."""

    name: str
    value_labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.value_labels) < 1:
            raise SchemaError(f"variable '{self.name}' has no values")
        if len(set(self.value_labels)) != len(self.value_labels):
            raise SchemaError(f"variable '{self.name}' has duplicate value labels")
        object.__setattr__(
            self, "_label_index", {v: k for k, v in enumerate(self.value_labels)}
        )

    @property
    def arity(self) -> int:
        return len(self.value_labels)

    def index_of(self, token: str) -> int:
        try:
            return self._label_index[token]
        except KeyError:
            raise SchemaError(
                f"value '{token}' is not among the labels of variable '{self.name}'"
            ) from None


class Dataset:
    """Immutable encoded table of cases over discrete variables.

    Attributes
    ----------
    variables : tuple of VariableSpec, one per column
    cases : (m, n) int array of value indices, read-only
    class_index : column position of the class variable
    name : optional identifier used in reports
    """

    def __init__(self, variables, cases, class_index, name=""):
        self.variables = tuple(variables)
        cases = np.ascontiguousarray(cases, dtype=np.int64)
        if cases.ndim != 2 or cases.shape[1] != len(self.variables):
            raise SchemaError(
                f"case matrix shape {cases.shape} does not match "
                f"{len(self.variables)} variables"
            )
        if not 0 <= class_index < len(self.variables):
            raise ConfigError(f"class index {class_index} out of range")
        if self.variables[class_index].arity < 2:
            raise SchemaError("class variable needs at least 2 values")
        for j, spec in enumerate(self.variables):
            col = cases[:, j]
            if col.size and (col.min() < 0 or col.max() >= spec.arity):
                raise SchemaError(f"column '{spec.name}' has value index out of range")
        cases.flags.writeable = False
        self.cases = cases
        self.class_index = int(class_index)
        self.name = name

    @property
    def num_cases(self) -> int:
        return self.cases.shape[0]

    @property
    def num_variables(self) -> int:
        return self.cases.shape[1]

    @property
    def class_spec(self) -> VariableSpec:
        return self.variables[self.class_index]

    def arities(self) -> tuple[int, ...]:
        return tuple(v.arity for v in self.variables)

    def decode_case(self, row: int) -> list[str]:
        """Map one row of value indices back to its source tokens."""
        return [
            spec.value_labels[v] for spec, v in zip(self.variables, self.cases[row])
        ]

    def subset(self, indices, name=None) -> "Dataset":
        """New dataset holding the given rows; encoding is shared."""
        return Dataset(
            self.variables,
            self.cases[np.asarray(indices, dtype=np.int64)],
            self.class_index,
            self.name if name is None else name,
        )

    @staticmethod
    def from_tokens(columns: dict, class_column: str, name="") -> "Dataset":
        """Build a dataset from {column name: list of tokens} in code.

        Uses the same lexicographic encoding as the file loader.
        """
        header = list(columns)
        lengths = {len(v) for v in columns.values()}
        if len(lengths) > 1:
            raise SchemaError("columns have unequal lengths")
        rows = list(zip(*columns.values())) if columns else []
        return _encode(header, [list(r) for r in rows], class_column, None, name)

    def __repr__(self):
        return (
            f"Dataset({self.name or '?'}: {self.num_cases} cases x "
            f"{self.num_variables} variables, class='{self.class_spec.name}')"
        )


@dataclass(frozen=True)
class SplitPlan:
    """A reproducible 2/3 train, 1/3 test partition of case indices."""

    seed: int
    train_indices: tuple[int, ...]
    test_indices: tuple[int, ...]


def _resolve_column(header, class_column):
    if isinstance(class_column, int):
        if not 0 <= class_column < len(header):
            raise ConfigError(f"class column index {class_column} out of range")
        return class_column
    if class_column in header:
        return header.index(class_column)
    try:
        idx = int(class_column)
    except (TypeError, ValueError):
        raise ConfigError(f"unknown class column '{class_column}'") from None
    if 0 <= idx < len(header):
        return idx
    raise ConfigError(f"unknown class column '{class_column}'")


def load_schema(path) -> dict:
    """Parse a sidecar schema file pinning value labels per column.

    One `column: label1,label2,...` line per pinned column; `#` starts a
    comment. Useful when a sample file may not exhibit a column's full
    value set.
    """
    pinned = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if ":" not in line:
                raise ConfigError(f"bad schema line: {line!r}")
            key, _, rest = line.partition(":")
            labels = tuple(t.strip() for t in rest.split(","))
            if any(not t for t in labels):
                raise ConfigError(f"schema for '{key.strip()}' has an empty label")
            pinned[key.strip()] = labels
    return pinned


def _encode(header, rows, class_column, pinned, name) -> Dataset:
    class_idx = _resolve_column(header, class_column)
    if pinned:
        unknown = set(pinned) - set(header)
        if unknown:
            raise ConfigError(f"schema pins unknown columns: {sorted(unknown)}")
    variables = []
    for j, col_name in enumerate(header):
        tokens = [row[j] for row in rows]
        if pinned and col_name in pinned:
            labels = pinned[col_name]
            extra = set(tokens) - set(labels)
            if extra:
                raise SchemaError(
                    f"column '{col_name}' has values {sorted(extra)} outside "
                    f"its pinned labels"
                )
        else:
            labels = tuple(sorted(set(tokens)))
        variables.append(VariableSpec(col_name, labels))
    if variables[class_idx].arity < 2:
        raise SchemaError(
            f"class column '{header[class_idx]}' has fewer than 2 distinct values"
        )
    cases = np.empty((len(rows), len(header)), dtype=np.int64)
    for j, spec in enumerate(variables):
        cases[:, j] = [spec.index_of(row[j]) for row in rows]
    return Dataset(variables, cases, class_idx, name)


def load_dataset(path, class_column, schema_path=None, name=None) -> Dataset:
    """Load a comma-separated file with a header row into a Dataset.

    Cells must be categorical tokens; an empty cell or a `?` is a hard
    error (missing values are rejected, not imputed). `class_column` may
    be a header name or a 0-based index. A schema sidecar (`schema_path`)
    can pin value labels per column.
    """
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
        for j, cell in enumerate(cells):
            if cell in MISSING_TOKENS:
                raise MissingValueError(
                    f"{path}: missing value at row {r}, column '{header[j]}'"
                )
        rows.append(cells)
    pinned = load_schema(schema_path) if schema_path else None
    if name is None:
        name = os.path.splitext(os.path.basename(path))[0]
    return _encode(header, rows, class_column, pinned, name)


def split_plan(num_cases: int, seed: int) -> SplitPlan:
    """Partition {0..m-1}: a seeded uniform shuffle, first round(2m/3) to train."""
    if num_cases < 3:
        raise DatasetTooSmallError(
            f"need at least 3 cases to split, got {num_cases}"
        )
    perm = np.random.default_rng(seed).permutation(num_cases)
    n_train = int(round(2 * num_cases / 3))
    return SplitPlan(
        seed=seed,
        train_indices=tuple(int(i) for i in perm[:n_train]),
        test_indices=tuple(int(i) for i in perm[n_train:]),
    )


def split(dataset: Dataset, seed: int) -> tuple[Dataset, Dataset]:
    """Split into 2/3 train and 1/3 test under the given seed.

    Both halves share the parent dataset's variable specs, so the
    encoding (and every table slot) is identical across the split.
    """
    plan = split_plan(dataset.num_cases, seed)
    return dataset.subset(plan.train_indices), dataset.subset(plan.test_indices)

"""Shared builders for the test suite: tiny datasets from integer
columns, seeded random datasets, and hand-built generative models."""

from __future__ import annotations

import numpy as np

from blanketbayes import Dataset, VariableSpec
from blanketbayes.graph import NetworkStructure
from blanketbayes.model import ClassifierModel, ConditionalProbabilityTable


def int_dataset(columns, class_index=0, arities=None, name="test"):
    """Dataset from integer columns (list of per-variable value lists).

    Labels are "v0", "v1", ... so value index == integer value.
    """
    columns = [list(col) for col in columns]
    if arities is None:
        arities = [max(col) + 1 if col else 2 for col in columns]
    specs = tuple(
        VariableSpec(f"x{i}", tuple(f"v{k}" for k in range(max(2, arities[i]))))
        for i in range(len(columns))
    )
    cases = np.array(columns, dtype=np.int64).T.reshape(len(columns[0]), len(columns))
    return Dataset(specs, cases, class_index, name=name)


def random_dataset(rng, n_vars=None, m=None, max_arity=3, class_index=0, name="fuzz"):
    """Random categorical dataset; the class column always has both of
    its first two values present."""
    if n_vars is None:
        n_vars = int(rng.integers(2, 6))
    if m is None:
        m = int(rng.integers(4, 40))
    arities = [int(rng.integers(2, max_arity + 1)) for _ in range(n_vars)]
    columns = [list(rng.integers(0, r, size=m)) for r in arities]
    cc = columns[class_index]
    cc[0], cc[1] = 0, 1  # guarantee a non-degenerate class
    return int_dataset(columns, class_index, arities, name)


def make_model(specs, class_index, arcs, tables):
    """ClassifierModel from explicit pieces.

    tables: per node, dict mapping parent value tuples to row lists.
    """
    n = len(specs)
    structure = NetworkStructure(n, class_index=class_index)
    for source, target in arcs:
        structure.add_arc(source, target)
    cpts = []
    for node in range(n):
        parents = tuple(sorted(structure.parents[node]))
        rows = {inst: np.asarray(row, dtype=float) for inst, row in tables[node].items()}
        cpts.append(ConditionalProbabilityTable(node, specs[node].arity, parents, rows))
    return ClassifierModel(tuple(specs), class_index, structure, cpts)


def binary_nb_generator():
    """Class plus five binary attributes, all children of the class."""
    specs = [VariableSpec("c", ("n", "y"))]
    specs += [VariableSpec(f"a{i}", ("0", "1")) for i in range(5)]
    probs = [(0.2, 0.75), (0.3, 0.8), (0.15, 0.6), (0.4, 0.9), (0.25, 0.7)]
    tables = [{(): [0.55, 0.45]}]
    arcs = []
    for i, (p0, p1) in enumerate(probs, start=1):
        arcs.append((0, i))
        tables.append({(0,): [1 - p0, p0], (1,): [1 - p1, p1]})
    return make_model(specs, 0, arcs, tables)


def quaternary_nb_generator():
    """Class plus five four-valued attributes; the four-valued children
    keep the class arcs robustly oriented toward the attributes."""
    rows = [
        ((0.55, 0.25, 0.12, 0.08), (0.08, 0.12, 0.25, 0.55)),
        ((0.45, 0.35, 0.12, 0.08), (0.10, 0.15, 0.30, 0.45)),
        ((0.50, 0.20, 0.20, 0.10), (0.12, 0.28, 0.25, 0.35)),
        ((0.40, 0.30, 0.20, 0.10), (0.08, 0.17, 0.30, 0.45)),
        ((0.60, 0.20, 0.12, 0.08), (0.15, 0.25, 0.25, 0.35)),
    ]
    specs = [VariableSpec("c", ("n", "y"))]
    specs += [VariableSpec(f"a{i}", ("p", "q", "r", "s")) for i in range(5)]
    tables = [{(): [0.6, 0.4]}]
    arcs = []
    for i, (r0, r1) in enumerate(rows, start=1):
        arcs.append((0, i))
        tables.append({(0,): list(r0), (1,): list(r1)})
    return make_model(specs, 0, arcs, tables)


def class_parent_generator():
    """A skewed binary attribute that truly causes the class, plus three
    independent binary noise attributes."""
    specs = [
        VariableSpec("p", ("0", "1")),
        VariableSpec("cls", ("n", "y")),
        VariableSpec("z0", ("0", "1")),
        VariableSpec("z1", ("0", "1")),
        VariableSpec("z2", ("0", "1")),
    ]
    tables = [
        {(): [0.7, 0.3]},
        {(0,): [0.85, 0.15], (1,): [0.1, 0.9]},
        {(): [0.6, 0.4]},
        {(): [0.6, 0.4]},
        {(): [0.6, 0.4]},
    ]
    return make_model(specs, 1, [(0, 1)], tables)


def chain_generator(n_attrs=60):
    """Binary class with a chain of binary attributes: each attribute
    depends on the class and its predecessor. Used for search-cost
    comparisons at a realistic attribute count."""
    specs = [VariableSpec("c", ("n", "y"))]
    specs += [VariableSpec(f"a{i}", ("0", "1")) for i in range(n_attrs)]
    arcs = [(0, 1)]
    tables = [{(): [0.5, 0.5]}, {(0,): [0.8, 0.2], (1,): [0.25, 0.75]}]
    for i in range(2, n_attrs + 1):
        arcs.append((0, i))
        arcs.append((i - 1, i))
        rows = {}
        for cv in (0, 1):
            for av in (0, 1):
                q = (0.2 if cv == 0 else 0.35) + (0.45 if av else 0.0)
                rows[(cv, av)] = [1 - q, q]
        tables.append(rows)
    return make_model(specs, 0, arcs, tables)

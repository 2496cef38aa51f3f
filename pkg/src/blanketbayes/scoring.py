"""Sufficient statistics and the Bayesian structure score, in log space.

The per-node score for node i with parent set P is

    g(i, P) = prod_j  (r_i - 1)! / (N_ij + r_i - 1)!  *  prod_k N_ijk!

taken over the parent instantiations j observed in the data (an
unobserved instantiation contributes a factor of exactly 1, so only
observed ones are represented; this matters when the nominal
instantiation space is astronomically large). Factorials overflow any
fixed-width integer for even modest case counts, so everything is
computed as natural logs via the log-gamma function.

`ScoreLedger` memoizes per-(node, parent set) values and counts logical
score requests. The counter increments before the cache is consulted:
reported counts measure search effort, not cache luck.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .data import Dataset


@dataclass
class SufficientStats:
    """Count tables for one (node, parent set) pair.

    `instantiations` maps each observed parent instantiation (a tuple of
    value indices, ordered by the sorted parent set) to the vector of
    per-value counts of the node.
    """

    node: int
    parent_set: tuple[int, ...]
    instantiations: dict

    @property
    def q_observed(self) -> int:
        return len(self.instantiations)

    def total_cases(self) -> int:
        return int(sum(int(v.sum()) for v in self.instantiations.values()))


def count_stats(dataset: Dataset, node: int, parents) -> SufficientStats:
    """Tally the node's value counts under every observed parent instantiation."""
    parent_set = tuple(sorted(int(p) for p in parents))
    if node in parent_set:
        raise ValueError(f"node {node} cannot be its own parent")
    arity = dataset.variables[node].arity
    column = dataset.cases[:, node]
    if dataset.num_cases == 0:
        return SufficientStats(node, parent_set, {})
    if not parent_set:
        counts = np.bincount(column, minlength=arity)
        return SufficientStats(node, parent_set, {(): counts})
    sub = dataset.cases[:, parent_set]
    uniq, inverse = np.unique(sub, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    flat = np.bincount(inverse * arity + column, minlength=len(uniq) * arity)
    counts = flat.reshape(len(uniq), arity)
    instantiations = {
        tuple(int(v) for v in uniq[j]): counts[j] for j in range(len(uniq))
    }
    return SufficientStats(node, parent_set, instantiations)


@dataclass
class ScoreLedger:
    """Memo cache plus the monotone counter of logical score requests.

    `acceptances` records every greedy arc acceptance made by a learner
    run as (node, parents_before, added_parent, log_gain), so a recorded
    search can be replayed and each gain re-checked.
    """

    cache: dict = field(default_factory=dict)
    g_calls: int = 0
    acceptances: list = field(default_factory=list)

    def record_acceptance(self, node, parents_before, added, log_gain):
        self.acceptances.append(
            (int(node), tuple(int(p) for p in parents_before), int(added), float(log_gain))
        )


def log_g(ledger: ScoreLedger, dataset: Dataset, node: int, parents) -> float:
    """Natural log of the per-node score; memoized, counted per request."""
    key = (node, tuple(sorted(int(p) for p in parents)))
    ledger.g_calls += 1
    cached = ledger.cache.get(key)
    if cached is not None:
        return cached
    stats = count_stats(dataset, node, key[1])
    arity = dataset.variables[node].arity
    if stats.q_observed == 0:
        value = 0.0
    else:
        counts = np.stack(list(stats.instantiations.values()))
        row_totals = counts.sum(axis=1)
        value = float(
            stats.q_observed * gammaln(arity)
            - gammaln(row_totals + arity).sum()
            + gammaln(counts + 1).sum()
        )
    ledger.cache[key] = value
    return value


def log_network_score(ledger: ScoreLedger, dataset: Dataset, structure) -> float:
    """Log joint structure score: the sum of per-node scores (locality)."""
    return sum(
        log_g(ledger, dataset, node, structure.parents[node])
        for node in range(structure.num_nodes)
    )


def log_score_ratio(ledger: ScoreLedger, dataset: Dataset, structure_a, structure_b) -> float:
    """Log of the posterior odds of structure_a over structure_b.

    Positive means structure_a is the more probable explanation of the
    data; the structure prior is uniform and cancels.
    """
    if structure_a.num_nodes != structure_b.num_nodes:
        raise ValueError("structures must share one variable set")
    return log_network_score(ledger, dataset, structure_a) - log_network_score(
        ledger, dataset, structure_b
    )

"""The four structure learners: naive Bayes, TAN, K2, and the
Markov-blanket classifier construction.

All greedy decisions require a strictly positive log-score gain; an arc
whose gain is exactly zero is never added. Every acceptance is recorded
on the ledger so a finished search can be replayed and re-checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .data import Dataset
from .errors import ConfigError, InvalidOrderingError
from .graph import NetworkStructure
from .scoring import ScoreLedger, log_g

LEARNER_NAMES = ("nb", "tan", "k2", "mbbc")


@dataclass
class LearnerConfig:
    """Knobs shared by the search-based learners.

    max_parents : upper bound on parents per node (None = n-1, effectively
        unbounded). For blanket construction the bound counts the class arc.
    node_ordering : explicit K2 ordering; default is the dataset's column
        order with the class moved to the front.
    """

    max_parents: int | None = None
    node_ordering: list[int] | None = None

    def bound(self, num_nodes: int) -> int:
        if self.max_parents is None:
            return max(num_nodes - 1, 0)
        if self.max_parents < 0:
            raise ConfigError("max_parents must be nonnegative")
        return self.max_parents


@dataclass
class MarkovPartition:
    """Step-1 verdict for every non-class node: parent of the class,
    child of the class, or unconnected."""

    class_parents: tuple[int, ...]
    class_children: tuple[int, ...]
    unconnected: tuple[int, ...]


def _greedy_parents(ledger, dataset, node, parents, candidates, max_parents):
    """K2's inner loop: repeatedly adopt the single candidate that most
    increases the node's score, while the score strictly improves and the
    parent bound allows. Returns the adopted candidates in acceptance
    order. Issues no score request when there is nothing to try.
    """
    parents = list(parents)
    pool = [c for c in candidates if c not in parents and c != node]
    if not pool or len(parents) >= max_parents:
        return []
    current = log_g(ledger, dataset, node, parents)
    added = []
    while pool and len(parents) < max_parents:
        best = None
        best_score = -float("inf")
        for z in pool:
            score = log_g(ledger, dataset, node, parents + [z])
            if score > best_score:
                best, best_score = z, score
        if best_score > current:
            ledger.record_acceptance(node, parents, best, best_score - current)
            parents.append(best)
            added.append(best)
            pool.remove(best)
            current = best_score
        else:
            break
    return added


def learn_naive_bayes(dataset: Dataset) -> NetworkStructure:
    """Fixed structure: one arc from the class to every other node."""
    c = dataset.class_index
    structure = NetworkStructure(dataset.num_variables, class_index=c)
    for node in range(dataset.num_variables):
        if node != c:
            structure.add_arc(c, node)
    return structure


def gbn_ordering(dataset: Dataset) -> list[int]:
    """Column order with the class node moved to the front, so the class
    is available as a parent of every other node."""
    c = dataset.class_index
    return [c] + [i for i in range(dataset.num_variables) if i != c]


def learn_k2(ledger: ScoreLedger, dataset: Dataset, ordering, config=None) -> NetworkStructure:
    """Greedy structure search over a fixed node ordering.

    Each node may only take parents from among its predecessors in the
    ordering, so acyclicity is structural.
    """
    config = config or LearnerConfig()
    n = dataset.num_variables
    ordering = [int(i) for i in ordering]
    if sorted(ordering) != list(range(n)):
        raise InvalidOrderingError(
            f"ordering must be a permutation of 0..{n - 1}, got {ordering}"
        )
    bound = config.bound(n)
    structure = NetworkStructure(n, class_index=dataset.class_index)
    for position, node in enumerate(ordering):
        adopted = _greedy_parents(
            ledger, dataset, node, [], ordering[:position], bound
        )
        for z in adopted:
            structure.add_arc(z, node)
    return structure


def learn_tan(ledger: ScoreLedger, dataset: Dataset) -> NetworkStructure:
    """Tree-augmented naive Bayes: the naive Bayes structure plus at most
    one extra parent per attribute, found by the child-tree step with
    every attribute treated as a child of the class."""
    structure = learn_naive_bayes(dataset)
    children = [i for i in range(dataset.num_variables) if i != dataset.class_index]
    return mbbc_step3(ledger, dataset, children, structure)


def mbbc_step1(ledger: ScoreLedger, dataset: Dataset):
    """Partition the non-class nodes into parents / children / unconnected.

    A pre-pass scores every node's parent-direction and child-direction
    gains against empty parent sets and fixes the processing order
    (strongest association first), removing the sensitivity to column
    order. The main pass then recomputes the parent-direction gain
    against the class's current (growing) parent set; the
    child-direction gain is definitionally the pre-pass value, since
    children acquire no parents until step 2.

    Returns (partition, partial structure holding the class arcs).
    """
    c = dataset.class_index
    n = dataset.num_variables
    structure = NetworkStructure(n, class_index=c)
    others = [i for i in range(n) if i != c]
    if not others:
        return MarkovPartition((), (), ()), structure

    class_base = log_g(ledger, dataset, c, [])
    prelim = []
    for i in others:
        gain_parent = log_g(ledger, dataset, c, [i]) - class_base
        gain_child = log_g(ledger, dataset, i, [c]) - log_g(ledger, dataset, i, [])
        prelim.append((i, gain_parent, gain_child))
    prelim.sort(key=lambda t: (-max(t[1], t[2]), t[0]))

    parents: list[int] = []
    children: list[int] = []
    unconnected: list[int] = []
    class_parents: list[int] = []
    class_score = class_base
    for i, _, gain_child in prelim:
        extended = log_g(ledger, dataset, c, class_parents + [i])
        gain_parent = extended - class_score
        if max(gain_parent, gain_child) <= 0.0:
            unconnected.append(i)
        elif gain_parent > gain_child:
            ledger.record_acceptance(c, class_parents, i, gain_parent)
            structure.add_arc(i, c)
            class_parents.append(i)
            class_score = extended
            parents.append(i)
        else:
            # ties side with the child set: classifiers condition on the class
            ledger.record_acceptance(i, [], c, gain_child)
            structure.add_arc(c, i)
            children.append(i)
    partition = MarkovPartition(
        tuple(sorted(parents)), tuple(sorted(children)), tuple(sorted(unconnected))
    )
    return partition, structure


def mbbc_step2(ledger, dataset, partition, structure, config=None) -> NetworkStructure:
    """Give each class child extra parents from the candidate pool of
    class parents and unconnected nodes (never other children, never the
    class again). The parent bound counts the class arc."""
    config = config or LearnerConfig()
    bound = config.bound(dataset.num_variables)
    candidates = sorted(partition.class_parents + partition.unconnected)
    for child in partition.class_children:
        adopted = _greedy_parents(
            ledger, dataset, child, structure.parents[child], candidates, bound
        )
        for z in adopted:
            structure.add_arc(z, child)
    return structure


def mbbc_step3(ledger, dataset, children, structure) -> NetworkStructure:
    """Add a tree of dependencies among the class children.

    Builds the candidate list of all ordered child pairs (a, b), drops
    pairs whose extension does not strictly improve a's score, sorts the
    survivors by descending gain (ties by pair index order), then scans:
    arc b -> a is added unless a is already an ancestor of b, and once a
    pair for a has been decided either way, a takes no further parent.
    """
    kids = sorted(int(k) for k in children)
    if not kids:
        return structure
    base = {a: log_g(ledger, dataset, a, structure.parents[a]) for a in kids}
    position = {a: idx for idx, a in enumerate(kids)}
    survivors = []
    for a in kids:
        for b in kids:
            if a == b:
                continue
            gain = log_g(ledger, dataset, a, structure.parents[a] + [b]) - base[a]
            if gain > 0.0:
                survivors.append((a, b, gain))
    survivors.sort(key=lambda t: (-t[2], position[t[0]], position[t[1]]))
    decided = set()
    for a, b, gain in survivors:
        if a in decided:
            continue
        decided.add(a)
        if not structure.is_ancestor(a, b):
            ledger.record_acceptance(a, structure.parents[a], b, gain)
            structure.add_arc(b, a)
    return structure


def learn_mbbc(ledger: ScoreLedger, dataset: Dataset, config=None) -> NetworkStructure:
    """Three-step approximate Markov blanket around the class node:
    partition, parents for the children, then the child tree."""
    config = config or LearnerConfig()
    partition, structure = mbbc_step1(ledger, dataset)
    structure = mbbc_step2(ledger, dataset, partition, structure, config)
    return mbbc_step3(ledger, dataset, partition.class_children, structure)


def learn(name: str, ledger: ScoreLedger, dataset: Dataset, config=None) -> NetworkStructure:
    """Dispatch by learner token: nb, tan, k2 (class-first ordering), mbbc."""
    config = config or LearnerConfig()
    if name == "nb":
        return learn_naive_bayes(dataset)
    if name == "tan":
        return learn_tan(ledger, dataset)
    if name == "k2":
        ordering = config.node_ordering or gbn_ordering(dataset)
        return learn_k2(ledger, dataset, ordering, config)
    if name == "mbbc":
        return learn_mbbc(ledger, dataset, config)
    raise ConfigError(f"unknown learner '{name}', expected one of {LEARNER_NAMES}")

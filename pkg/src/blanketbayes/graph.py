"""Directed acyclic graph structure with per-node parent lists.

Acyclicity is enforced eagerly at arc insertion; the ancestor query that
the check needs is also part of the public surface (the child-tree step
of the blanket learner uses it directly).
"""

from __future__ import annotations

from .errors import CycleError, DuplicateArcError

_ARC_SEP = " <- "


class NetworkStructure:
    """A DAG over `num_nodes` nodes, stored as ordered parent lists."""

    __slots__ = ("num_nodes", "parents", "class_index")

    def __init__(self, num_nodes: int, class_index: int | None = None):
        if num_nodes < 0:
            raise ValueError("num_nodes must be nonnegative")
        self.num_nodes = num_nodes
        self.parents: list[list[int]] = [[] for _ in range(num_nodes)]
        self.class_index = class_index

    def copy(self) -> "NetworkStructure":
        dup = NetworkStructure(self.num_nodes, self.class_index)
        dup.parents = [list(p) for p in self.parents]
        return dup

    def _check_node(self, node: int):
        if not 0 <= node < self.num_nodes:
            raise ValueError(f"node {node} out of range 0..{self.num_nodes - 1}")

    def has_arc(self, source: int, target: int) -> bool:
        return source in self.parents[target]

    def add_arc(self, source: int, target: int):
        """Insert source -> target, rejecting duplicates and cycles."""
        self._check_node(source)
        self._check_node(target)
        if source == target:
            raise CycleError(f"self-arc {source} -> {target}")
        if self.has_arc(source, target):
            raise DuplicateArcError(f"arc {source} -> {target} already present")
        if self.is_ancestor(target, source):
            raise CycleError(
                f"arc {source} -> {target} would close a cycle: "
                f"{target} is an ancestor of {source}"
            )
        self.parents[target].append(source)

    def _child_lists(self) -> list[list[int]]:
        children: list[list[int]] = [[] for _ in range(self.num_nodes)]
        for node, plist in enumerate(self.parents):
            for p in plist:
                children[p].append(node)
        return children

    def children(self, node: int) -> list[int]:
        self._check_node(node)
        return [t for t in range(self.num_nodes) if node in self.parents[t]]

    def arcs(self) -> list[tuple[int, int]]:
        return [(p, node) for node in range(self.num_nodes) for p in self.parents[node]]

    def is_ancestor(self, a: int, b: int) -> bool:
        """True iff a directed path a -> ... -> b exists (irreflexive)."""
        self._check_node(a)
        self._check_node(b)
        children = self._child_lists()
        stack = list(children[a])
        seen = set()
        while stack:
            node = stack.pop()
            if node == b:
                return True
            if node in seen:
                continue
            seen.add(node)
            stack.extend(children[node])
        return False

    def markov_blanket(self, node: int) -> set[int]:
        """Parents, children, and the children's other parents of `node`."""
        self._check_node(node)
        blanket = set(self.parents[node])
        for child in self.children(node):
            blanket.add(child)
            blanket.update(self.parents[child])
        blanket.discard(node)
        return blanket

    def topological_order(self) -> list[int]:
        """Kahn's algorithm; ties broken by node index for determinism."""
        indegree = [len(p) for p in self.parents]
        children = self._child_lists()
        ready = sorted(i for i in range(self.num_nodes) if indegree[i] == 0)
        order = []
        while ready:
            node = ready.pop(0)
            order.append(node)
            inserted = False
            for child in children[node]:
                indegree[child] -= 1
                if indegree[child] == 0:
                    ready.append(child)
                    inserted = True
            if inserted:
                ready.sort()
        if len(order) != self.num_nodes:
            raise CycleError("graph contains a cycle")
        return order

    def __eq__(self, other):
        return (
            isinstance(other, NetworkStructure)
            and self.num_nodes == other.num_nodes
            and self.parents == other.parents
            and self.class_index == other.class_index
        )

    def __repr__(self):
        return f"NetworkStructure({self.num_nodes} nodes, arcs={self.arcs()})"


def structure_to_text(structure: NetworkStructure, names) -> str:
    """One line per node: `name <- parent1, parent2`; round-trips exactly."""
    names = list(names)
    if len(names) != structure.num_nodes:
        raise ValueError("one name per node required")
    lines = []
    for node in range(structure.num_nodes):
        plist = ", ".join(names[p] for p in structure.parents[node])
        lines.append(f"{names[node]}{_ARC_SEP}{plist}".rstrip())
    return "\n".join(lines) + "\n"


def structure_from_text(text: str) -> tuple[NetworkStructure, list[str]]:
    """Parse the plain-text structure format; returns (structure, names)."""
    entries = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if "<-" not in line:
            raise ValueError(f"bad structure line: {line!r}")
        name, _, rest = line.partition("<-")
        parents = [t.strip() for t in rest.split(",") if t.strip()]
        entries.append((name.strip(), parents))
    names = [name for name, _ in entries]
    index = {name: i for i, name in enumerate(names)}
    if len(index) != len(names):
        raise ValueError("duplicate node names in structure text")
    structure = NetworkStructure(len(names))
    for name, parents in entries:
        for p in parents:
            if p not in index:
                raise ValueError(f"unknown parent name '{p}' for node '{name}'")
            structure.add_arc(index[p], index[name])
    return structure, names

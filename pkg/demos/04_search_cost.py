"""
Search cost: counting family evaluations instead of seconds
===========================================================

Wall-clock speed depends on the machine; the number of Bayesian family
scores a learner requests does not. This sweep samples datasets of
growing width from a chain-structured generator and tabulates the
ledger counts, showing the blanket learner's sub-K2 growth while the
naive structure never touches the scorer.
"""

import time

import numpy as np

from blanketbayes import (
    ClassifierModel,
    ConditionalProbabilityTable,
    DEFAULT_SEED,
    NetworkStructure,
    ScoreLedger,
    VariableSpec,
    learn,
    learn_k2,
    sample_dataset,
)


def chain_model(width):
    """Binary class; attribute i depends on the class and attribute i-1."""
    specs = [VariableSpec("c", ("n", "y"))]
    specs += [VariableSpec(f"a{i}", ("0", "1")) for i in range(width)]
    structure = NetworkStructure(width + 1, class_index=0)
    cpts = [ConditionalProbabilityTable(0, 2, (), {(): np.array([0.5, 0.5])})]
    structure.add_arc(0, 1)
    cpts.append(ConditionalProbabilityTable(
        1, 2, (0,), {(0,): np.array([0.8, 0.2]), (1,): np.array([0.25, 0.75])}
    ))
    for i in range(2, width + 1):
        structure.add_arc(0, i)
        structure.add_arc(i - 1, i)
        rows = {}
        for cv in (0, 1):
            for av in (0, 1):
                q = (0.2 if cv == 0 else 0.35) + (0.45 if av else 0.0)
                rows[(cv, av)] = np.array([1 - q, q])
        cpts.append(ConditionalProbabilityTable(i, 2, (0, i - 1), rows))
    return ClassifierModel(tuple(specs), 0, structure, cpts)


print(f"{'width':>5} {'nb':>6} {'tan':>7} {'mbbc':>7} {'k2':>7}   mbbc/k2   seconds")
for width in (10, 20, 40, 60):
    data = sample_dataset(chain_model(width), 2000, seed=DEFAULT_SEED)
    counts = {}
    start = time.perf_counter()
    for learner in ("nb", "tan", "mbbc"):
        ledger = ScoreLedger()
        learn(learner, ledger, data)
        counts[learner] = ledger.g_calls
    # K2 with the generator's own causal ordering (class first, then the chain)
    ledger = ScoreLedger()
    learn_k2(ledger, data, list(range(width + 1)))
    counts["k2"] = ledger.g_calls
    elapsed = time.perf_counter() - start
    ratio = counts["mbbc"] / counts["k2"]
    print(f"{width:>5} {counts['nb']:>6} {counts['tan']:>7} "
          f"{counts['mbbc']:>7} {counts['k2']:>7}   {ratio:>7.2f}   {elapsed:>7.2f}")

print()
print("nb asks for nothing; tan grows as the square of the width;")
print("the blanket learner trims K2 by confining search to the class blanket.")

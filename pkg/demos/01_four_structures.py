"""
Four classifier structures on the tic-tac-toe endgame set
=========================================================

The 958 legal end positions are reconstructed in code, so this demo has
no data dependency. Each learner sees the same 10 columns (class plus
the 9 board cells) and proposes a different dependence structure; the
score ledger records how many family evaluations the search needed.
"""

from blanketbayes import ScoreLedger, learn, log_network_score
from blanketbayes.tictactoe import endgame_dataset

data = endgame_dataset()
print(f"dataset: {data.name}  ({data.num_cases} cases, {data.num_variables} columns)")
print(f"class column: {data.variables[data.class_index].name} "
      f"with labels {data.variables[data.class_index].value_labels}")
print()

names = [v.name for v in data.variables]

for learner in ("nb", "tan", "k2", "mbbc"):
    ledger = ScoreLedger()
    structure = learn(learner, ledger, data)
    search_calls = ledger.g_calls  # before the final whole-network scoring pass
    score = log_network_score(ledger, data, structure)

    # arcs between attributes, i.e. everything beyond the naive star
    extra = [(s, t) for s, t in structure.arcs() if s != data.class_index]
    blanket = sorted(structure.markov_blanket(data.class_index))

    print(f"--- {learner} ---")
    print(f"  search cost     : {search_calls} family scores")
    print(f"  network score   : {score:.1f}")
    print(f"  non-class arcs  : {len(extra)}")
    for s, t in extra[:6]:
        print(f"      {names[s]} -> {names[t]}")
    if len(extra) > 6:
        print(f"      ... and {len(extra) - 6} more")
    print(f"  class blanket   : {[names[i] for i in blanket]}")
    print()

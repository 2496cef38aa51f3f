"""
ROC curves without a plotting library
=====================================

Vertically averages the per-split ROC curves of two learners on the
tic-tac-toe endgame set (positive class = "positive", the x-player win)
and draws both on a terminal grid. The averaged curve lives on a fixed
101-point false-positive grid, which is what makes curves from
different splits comparable point-by-point.
"""

import numpy as np

from blanketbayes import DEFAULT_SEED, average_roc, run_evaluation
from blanketbayes.tictactoe import endgame_dataset

data = endgame_dataset()

curves = {}
for learner in ("nb", "mbbc"):
    run = run_evaluation(data, learner, base_seed=DEFAULT_SEED)
    curves[learner] = average_roc(run.curves)
    print(f"{learner:<5} averaged AUC over {len(run.curves)} splits: "
          f"{curves[learner].auc:.4f}")

# terminal plot: 41 columns of false-positive rate, 21 rows of true-positive
W, H = 41, 21
grid = [[" "] * W for _ in range(H)]
marks = {"nb": "n", "mbbc": "M"}
for learner, curve in curves.items():
    for fp, tp in curve.points:
        col = int(round(fp * (W - 1)))
        row = (H - 1) - int(round(tp * (H - 1)))
        grid[row][col] = marks[learner]
for i in range(H):  # chance diagonal underneath
    col = int(round((H - 1 - i) / (H - 1) * (W - 1)))
    if grid[i][col] == " ":
        grid[i][col] = "."

print()
print("tp 1.0 " + "_" * W)
for i, row in enumerate(grid):
    label = "   0.0" if i == H - 1 else "      "
    print(f"{label} |{''.join(row)}|")
print("        0.0" + " " * (W - 6) + "1.0 fp")
print(f"        n = nb, M = mbbc, . = chance")

# the two curves share the fp grid, so their gap is a plain difference
gap = curves["mbbc"].points[:, 1] - curves["nb"].points[:, 1]
k = int(np.argmax(gap))
print(f"\nlargest tp gap: {gap[k]:+.3f} at fp = {curves['mbbc'].points[k, 0]:.2f}")

"""
A complete benchmark on one dataset
===================================

Runs the full evaluation loop — repeated stratified-free random splits,
one model per split per learner, paired significance tests — and prints
the same table the `blanketbayes benchmark` command writes to CSV.

Every learner sees byte-identical splits (split r uses seed base+r), so
the 99% paired t-test on the per-split accuracy vectors is valid, and
the `best` flag marks the top mean plus anyone statistically tied with
it.
"""

from blanketbayes import DEFAULT_SEED, build_report, run_evaluation
from blanketbayes.tictactoe import endgame_dataset


def main():
    data = endgame_dataset()
    print(f"{data.name}: {data.num_cases} cases, 2/3-1/3 splits, "
          f"base seed {DEFAULT_SEED}")

    runs = [
        run_evaluation(data, learner, base_seed=DEFAULT_SEED)
        for learner in ("nb", "tan", "k2", "mbbc")
    ]
    print(f"repetitions per learner: {len(runs[0].seeds)}")
    print()

    report = build_report(runs)
    print(f"{'learner':<8} {'accuracy':>16} {'auc':>8} {'g_calls':>9}  best")
    for res in report.results:
        curve_auc = f"{res.curve.auc:.4f}" if res.curve else "-"
        flag = "*" if res.best else ""
        print(f"{res.learner:<8} {100 * res.mean_accuracy:>8.2f}"
              f" ± {100 * res.std_accuracy:>5.2f} {curve_auc:>8}"
              f" {res.mean_g_calls:>9.1f}  {flag}")

    print()
    ties = [f"{a}~{b}" for (a, b), same in report.indistinguishable.items()
            if same and a < b]
    if ties:
        print("statistically indistinguishable at 99%:", ", ".join(ties))
    else:
        print("all pairwise differences significant at 99%")
    print("best flag(s):", ", ".join(report.best_learners))


if __name__ == "__main__":
    main()

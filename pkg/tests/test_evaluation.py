import json

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy import stats

from blanketbayes import (
    DEFAULT_SEED,
    BenchmarkReport,
    ConfigError,
    DegenerateLabelsError,
    EvaluationRun,
    RocCurve,
    average_roc,
    build_report,
    default_repetitions,
    paired_t_indistinguishable,
    report_summary,
    resolve_positive_class,
    roc_curve,
    run_evaluation,
    sample_dataset,
    speed_report,
    write_report_csv,
    write_roc_csv,
    write_summary_json,
)
from blanketbayes import VariableSpec

from helpers import binary_nb_generator, int_dataset, make_model, random_dataset


class TestRocCurve:
    def test_hand_example(self):
        curve = roc_curve([0.9, 0.4, 0.6, 0.1], [1, 1, 0, 0])
        assert_array_equal(
            curve.points,
            [(0, 0), (0, 0.5), (0.5, 0.5), (0.5, 1), (1, 1)],
        )
        assert curve.auc == 0.75

    def test_perfect_separation(self):
        curve = roc_curve([0.9, 0.8, 0.2, 0.1], [1, 1, 0, 0])
        assert (curve.points == [0.0, 1.0]).all(axis=1).any()
        assert curve.auc == 1.0

    def test_all_scores_equal(self):
        curve = roc_curve([0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0])
        assert_array_equal(curve.points, [(0, 0), (1, 1)])
        assert curve.auc == 0.5

    def test_tied_scores_move_together(self):
        curve = roc_curve([0.9, 0.5, 0.5, 0.1], [1, 0, 1, 0])
        assert_array_equal(curve.points, [(0, 0), (0, 0.5), (0.5, 1), (1, 1)])

    def test_degenerate_labels(self):
        with pytest.raises(DegenerateLabelsError):
            roc_curve([0.9, 0.1], [1, 1])
        with pytest.raises(DegenerateLabelsError):
            roc_curve([0.9, 0.1], [0, 0])

    def test_length_mismatch(self):
        with pytest.raises(ConfigError):
            roc_curve([0.9, 0.1, 0.5], [1, 0])

    def test_fuzzed_monotonicity_and_flip_symmetry(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            n = int(rng.integers(2, 40))
            labels = rng.integers(0, 2, size=n)
            if labels.min() == labels.max():
                labels[0] = 1 - labels[0]
            # quantized scores force plenty of exact ties
            scores = rng.integers(0, 6, size=n) / 5.0
            curve = roc_curve(scores, labels)
            assert_array_equal(curve.points[0], (0, 0))
            assert_array_equal(curve.points[-1], (1, 1))
            assert np.all(np.diff(curve.points[:, 0]) >= 0)
            assert np.all(np.diff(curve.points[:, 1]) >= 0)
            assert 0.0 <= curve.auc <= 1.0
            flipped = roc_curve(scores, 1 - labels)
            assert flipped.auc == pytest.approx(1.0 - curve.auc, abs=1e-12)


class TestAverageRoc:
    def test_single_diagonal(self):
        avg = average_roc([RocCurve([(0, 0), (1, 1)])])
        assert_allclose(avg.points[:, 1], avg.points[:, 0], atol=1e-15)

    def test_idempotence(self):
        curve = roc_curve([0.9, 0.4, 0.6, 0.1], [1, 1, 0, 0])
        once = average_roc([curve])
        assert average_roc([curve, curve]) == once
        assert average_roc([once]) == once  # grid curves are fixed points

    def test_perfect_plus_diagonal(self):
        perfect = RocCurve([(0, 0), (0, 1), (1, 1)])
        diagonal = RocCurve([(0, 0), (1, 1)])
        avg = average_roc([perfect, diagonal])
        interior = avg.points[1:-1]
        assert_allclose(interior[:, 1], (1 + interior[:, 0]) / 2, atol=1e-12)
        assert_array_equal(avg.points[0], (0, 0))
        assert_array_equal(avg.points[-1], (1, 1))

    def test_needs_curves(self):
        with pytest.raises(ConfigError):
            average_roc([])


class TestPairedT:
    def test_identical_vectors(self):
        assert paired_t_indistinguishable([0.9, 0.8, 0.7], [0.9, 0.8, 0.7])

    def test_constant_shift(self):
        a = (90, 91, 92, 93, 94)
        b = (89, 90, 91, 92, 93)
        assert not paired_t_indistinguishable(a, b)

    def test_input_validation(self):
        with pytest.raises(ConfigError):
            paired_t_indistinguishable([0.9, 0.8], [0.9])
        with pytest.raises(ConfigError):
            paired_t_indistinguishable([0.9], [0.8])

    def test_matches_scipy(self):
        rng = np.random.default_rng(32)
        checked = 0
        for _ in range(100):
            n = int(rng.integers(3, 15))
            a = rng.random(n)
            b = a + rng.normal(scale=rng.choice([0.001, 0.05, 0.5]), size=n)
            if np.std(a - b, ddof=1) == 0.0:
                continue
            p = stats.ttest_rel(a, b).pvalue
            for confidence in (0.9, 0.95, 0.99):
                if abs(p - (1 - confidence)) < 1e-9:
                    continue
                got = paired_t_indistinguishable(a, b, confidence)
                assert got == (p > 1 - confidence)
                checked += 1
        assert checked > 200


class TestResolvePositive:
    def test_binary_defaults_to_second_value(self):
        d = int_dataset([[0, 1, 0, 1]])
        assert resolve_positive_class(d) == 1

    def test_multiclass_needs_a_name(self):
        d = int_dataset([[0, 1, 2, 0]])
        with pytest.raises(ConfigError):
            resolve_positive_class(d)
        assert resolve_positive_class(d, "v2") == 2

    def test_unknown_name(self):
        d = int_dataset([[0, 1, 0, 1]])
        with pytest.raises(ConfigError):
            resolve_positive_class(d, "maybe")


def copycat_dataset(m=60, seed=7):
    rng = np.random.default_rng(seed)
    attr = list(rng.integers(0, 2, size=m))
    attr[0], attr[1] = 0, 1
    return int_dataset([list(attr), attr], class_index=0, name="copycat")


class TestRunEvaluation:
    def test_deterministic(self):
        d = copycat_dataset()
        first = run_evaluation(d, "tan", repetitions=4, base_seed=99)
        second = run_evaluation(d, "tan", repetitions=4, base_seed=99)
        assert first == second
        assert first.seeds == (99, 100, 101, 102)

    def test_perfect_learner(self):
        d = copycat_dataset()
        for learner in ("nb", "mbbc"):
            run = run_evaluation(d, learner, repetitions=5)
            assert run.accuracies == (1.0,) * 5

    def test_naive_bayes_costs_nothing(self):
        run = run_evaluation(copycat_dataset(), "nb", repetitions=3)
        assert run.g_calls == (0, 0, 0)
        assert run.mean_g_calls == 0.0

    def test_repetition_default_rule(self):
        assert default_repetitions(299) == 50
        assert default_repetitions(300) == 10
        d = random_dataset(np.random.default_rng(33), n_vars=3, m=299)
        run = run_evaluation(d, "nb", collect_roc=False)
        assert len(run.accuracies) == 50

    def test_too_few_repetitions(self):
        with pytest.raises(ConfigError):
            run_evaluation(copycat_dataset(), "nb", repetitions=1)

    def test_multiclass_roc_needs_positive(self):
        cols = [[0, 1, 2] * 10, [0, 1] * 15]
        d = int_dataset(cols, class_index=0)
        with pytest.raises(ConfigError):
            run_evaluation(d, "nb", repetitions=2)
        run = run_evaluation(d, "nb", repetitions=2, positive_class="v1")
        assert len(run.curves) == 2
        silent = run_evaluation(d, "nb", repetitions=2, collect_roc=False)
        assert silent.curves is None

    def test_accuracy_is_exact_fraction(self):
        d = random_dataset(np.random.default_rng(34), n_vars=4, m=90)
        run = run_evaluation(d, "nb", repetitions=3, collect_roc=False)
        test_size = 90 - round(2 * 90 / 3)
        for acc in run.accuracies:
            assert (acc * test_size) == pytest.approx(round(acc * test_size))


class TestSpeedReport:
    def test_tan_quadratic_and_nb_zero(self):
        d = copycat_dataset(m=45)
        runs = [
            run_evaluation(d, "nb", repetitions=3),
            run_evaluation(d, "tan", repetitions=3),
        ]
        table = speed_report(runs)
        assert table["nb"] == 0.0
        assert table["tan"] == 1.0  # one attribute: the lone baseline call

    def test_rejects_mixed_datasets(self):
        a = run_evaluation(copycat_dataset(), "nb", repetitions=2)
        b = run_evaluation(
            copycat_dataset().subset(range(40), name="other"), "nb", repetitions=2
        )
        with pytest.raises(ConfigError):
            speed_report([a, b])


class TestSampleDataset:
    def test_seed_determinism(self):
        model = binary_nb_generator()
        one = sample_dataset(model, 200, seed=5)
        two = sample_dataset(model, 200, seed=5)
        other = sample_dataset(model, 200, seed=6)
        assert_array_equal(one.cases, two.cases)
        assert not np.array_equal(one.cases, other.cases)
        assert one.class_index == model.class_index
        assert one.variables == model.variables

    def test_one_hot_tables_are_deterministic(self):
        specs = [VariableSpec("c", ("0", "1")), VariableSpec("a", ("0", "1"))]
        tables = [{(): [1.0, 0.0]}, {(0,): [0.0, 1.0], (1,): [1.0, 0.0]}]
        model = make_model(specs, 0, [(0, 1)], tables)
        d = sample_dataset(model, 50, seed=11)
        assert_array_equal(d.cases, np.tile([0, 1], (50, 1)))

    def test_uniform_marginals_within_three_sigma(self):
        specs = [VariableSpec("c", ("0", "1")), VariableSpec("a", ("0", "1"))]
        tables = [{(): [0.5, 0.5]}, {(0,): [0.5, 0.5], (1,): [0.5, 0.5]}]
        model = make_model(specs, 0, [(0, 1)], tables)
        m = 10000
        d = sample_dataset(model, m, seed=12)
        sigma = np.sqrt(m * 0.25)
        for col in range(2):
            assert abs(d.cases[:, col].sum() - m / 2) <= 3 * sigma


def fake_run(learner, accuracies, name="synth", seeds=(1, 2, 3, 4, 5), calls=0):
    return EvaluationRun(
        dataset_name=name,
        learner=learner,
        seeds=tuple(seeds[: len(accuracies)]),
        accuracies=tuple(accuracies),
        g_calls=(calls,) * len(accuracies),
    )


class TestBuildReport:
    def test_single_dominant_learner(self):
        report = build_report(
            [
                fake_run("mbbc", (0.95, 0.96, 0.94, 0.95, 0.96)),
                fake_run("nb", (0.70, 0.71, 0.69, 0.70, 0.71)),
            ]
        )
        assert report.best_learners == ("mbbc",)
        assert not report.indistinguishable[("nb", "mbbc")]

    def test_identical_vectors_share_the_flag(self):
        accs = (0.7314, 0.7318, 0.7310, 0.7312, 0.7316)
        report = build_report([fake_run("k2", accs), fake_run("mbbc", accs)])
        assert report.best_learners == ("k2", "mbbc")

    def test_indistinguishable_runner_up_must_beat_the_rest(self):
        top = fake_run("a", (0.90, 0.94, 0.86, 0.92, 0.88))
        noisy = fake_run("b", (0.95, 0.60, 0.92, 0.58, 0.96))
        steady = fake_run("c", (0.85, 0.89, 0.81, 0.87, 0.83))
        report = build_report([top, noisy, steady])
        assert report.indistinguishable[("b", "a")]
        assert not report.indistinguishable[("c", "a")]
        # b ties with the winner but does not beat c's mean, so no flag
        assert report.best_learners == ("a",)

    def test_seed_pairing_enforced(self):
        with pytest.raises(ConfigError):
            build_report(
                [
                    fake_run("nb", (0.7, 0.8, 0.9)),
                    fake_run("tan", (0.7, 0.8, 0.9), seeds=(7, 8, 9)),
                ]
            )

    def test_dataset_mixing_rejected(self):
        with pytest.raises(ConfigError):
            build_report(
                [fake_run("nb", (0.7, 0.8)), fake_run("tan", (0.7, 0.8), name="zzz")]
            )
        with pytest.raises(ConfigError):
            build_report([])

    def test_result_lookup(self):
        report = build_report([fake_run("nb", (0.7, 0.8, 0.9))])
        assert report.result("nb").mean_accuracy == pytest.approx(0.8)
        with pytest.raises(KeyError):
            report.result("tan")


class TestWriters:
    def build(self):
        d = copycat_dataset()
        runs = [run_evaluation(d, name, repetitions=3) for name in ("nb", "tan")]
        return build_report(runs)

    def test_report_csv(self, tmp_path):
        report = self.build()
        path = tmp_path / "report.csv"
        write_report_csv(report, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "learner,mean_acc,std_acc,mean_g_calls,best_flag"
        assert len(lines) == 3
        first = lines[1].split(",")
        assert first[0] == "nb"
        assert float(first[1]) == report.result("nb").mean_accuracy
        assert first[4] in ("0", "1")

    def test_roc_csv(self, tmp_path):
        report = self.build()
        path = tmp_path / "roc.csv"
        write_roc_csv(report.result("nb").curve, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "fp,tp"
        assert len(lines) == 102
        assert lines[1] == "0.0,0.0"
        assert lines[-1] == "1.0,1.0"

    def test_summary_json(self, tmp_path):
        report = self.build()
        path = tmp_path / "summary.json"
        write_summary_json([report_summary(report)], path, seed=DEFAULT_SEED)
        payload = json.loads(path.read_text())
        assert payload["seed"] == DEFAULT_SEED
        entry = payload["reports"][0]
        assert entry["dataset"] == "copycat"
        assert set(entry["learners"]) == {"nb", "tan"}
        assert entry["learners"]["nb"]["auc"] is not None

    def test_byte_identical_rewrites(self, tmp_path):
        report = self.build()
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_report_csv(report, a)
        write_report_csv(self.build(), b)
        assert a.read_bytes() == b.read_bytes()

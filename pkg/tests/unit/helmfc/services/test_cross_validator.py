"""Unit tests for fold assignment, per-class accuracy and repeated k-fold CV."""
import logging

import numpy as np
import pytest

from helmfc.models import BinaryLabel, DimensionMismatchError, FeatureMatrix, FoldAssignmentError
from helmfc.models.run_config import ClassifierSection
from helmfc.services import compare_variants, fit_fold, kfold_split, per_class_accuracy, run_cv
from helmfc.services.cross_validator import CrossValidator, fold_seed, split_seed

NC, ADHD = BinaryLabel.NC, BinaryLabel.ADHD


@pytest.fixture
def cluster_features(rng):
    """Twelve NC and twelve ADHD subjects in two separated clusters."""
    values = np.vstack([rng.normal(0.0, 0.2, size=(12, 6)), rng.normal(2.0, 0.2, size=(12, 6))])
    labels = [NC] * 12 + [ADHD] * 12
    return FeatureMatrix([f"s{i:02d}" for i in range(24)], values, labels, "connectivity-vector")


@pytest.fixture
def elm_section():
    return ClassifierSection(kind="elm", hidden_nodes=40, ridge_c=10.0)


class TestKfoldSplit:
    """Test cases for the seeded round-robin split."""

    def test_fold_sizes_differ_by_at_most_one(self):
        labels = [NC] * 120 + [ADHD] * 124
        assignment = kfold_split(244, labels, 5, seed=3)
        assert sorted(assignment.fold_sizes(), reverse=True) == [49, 49, 49, 49, 48]

    def test_unstratified_sizes(self):
        assignment = kfold_split(244, None, 5, seed=3, stratified=False)
        assert sorted(assignment.fold_sizes(), reverse=True) == [49, 49, 49, 49, 48]
        assert not assignment.stratified

    def test_every_subject_in_exactly_one_fold(self):
        assignment = kfold_split(23, [NC] * 11 + [ADHD] * 12, 4, seed=1)
        held_out = np.concatenate([assignment.test_indices(fold) for fold in range(1, 5)])
        assert sorted(held_out.tolist()) == list(range(23))

    def test_train_and_test_disjoint(self):
        assignment = kfold_split(20, [NC] * 10 + [ADHD] * 10, 5, seed=8)
        for fold in range(1, 6):
            train = set(assignment.train_indices(fold).tolist())
            test = set(assignment.test_indices(fold).tolist())
            assert not train & test
            assert len(train) + len(test) == 20

    def test_stratification_balances_classes(self):
        labels = [NC] * 50 + [ADHD] * 50
        assignment = kfold_split(100, labels, 5, seed=11)
        classes = np.array([label.value for label in labels])
        for fold in range(1, 6):
            members = classes[assignment.test_indices(fold)]
            assert np.sum(members == NC.value) == 10
            assert np.sum(members == ADHD.value) == 10

    def test_leave_one_out(self):
        assignment = kfold_split(6, [NC, ADHD] * 3, 6, seed=0)
        assert assignment.fold_sizes() == [1] * 6

    def test_deterministic_for_seed(self):
        labels = [NC] * 15 + [ADHD] * 15
        assert kfold_split(30, labels, 5, seed=4) == kfold_split(30, labels, 5, seed=4)
        assert kfold_split(30, labels, 5, seed=4) != kfold_split(30, labels, 5, seed=5)

    def test_small_class_falls_back_with_warning(self, caplog):
        labels = [NC] * 20 + [ADHD] * 3
        with caplog.at_level(logging.WARNING, logger="helmfc.services.cross_validator"):
            assignment = kfold_split(23, labels, 5, seed=2)
        assert "without stratification" in caplog.text
        assert max(assignment.fold_sizes()) - min(assignment.fold_sizes()) <= 1

    @pytest.mark.parametrize("n, k", [(10, 1), (3, 5), (0, 2)])
    def test_invalid_split(self, n, k):
        with pytest.raises(FoldAssignmentError):
            kfold_split(n, None, k, seed=0)

    def test_label_count_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            kfold_split(10, [NC] * 9, 2, seed=0)


class TestPerClassAccuracy:
    """Test cases for per-class recall."""

    def test_mixed_predictions(self):
        accuracy = per_class_accuracy([NC, ADHD, ADHD, ADHD], [NC, NC, ADHD, ADHD])
        assert accuracy == {NC: 0.5, ADHD: 1.0}

    def test_absent_class_is_none(self):
        accuracy = per_class_accuracy([1, 2, 1], [1, 1, 1])
        assert accuracy[NC] == pytest.approx(2 / 3)
        assert accuracy[ADHD] is None

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            per_class_accuracy([1, 2], [1])


class TestSeeds:
    def test_fixed_folds_share_split_seed(self):
        assert split_seed(9, 1, True) == split_seed(9, 7, True)
        assert split_seed(9, 1, False) != split_seed(9, 2, False)

    def test_fold_seeds_distinct(self):
        seeds = {fold_seed(0, repeat, fold) for repeat in range(1, 4) for fold in range(1, 6)}
        assert len(seeds) == 15


class TestFitFold:
    def test_scaler_fitted_on_training_rows_only(self, cluster_features, elm_section):
        train = np.arange(12, 24)
        fitted = fit_fold(cluster_features, train, elm_section, seed=1)
        train_values = cluster_features.values[train]
        np.testing.assert_allclose(fitted.scaler.transform(train_values).min(axis=0), 0.0)
        np.testing.assert_allclose(fitted.scaler.transform(train_values).max(axis=0), 1.0)

    def test_predicts_held_out_rows(self, cluster_features, elm_section):
        assignment = kfold_split(24, cluster_features.labels, 4, seed=0)
        fitted = fit_fold(cluster_features, assignment.train_indices(1), elm_section, seed=1)
        test = assignment.test_indices(1)
        predicted = fitted.predict(cluster_features.values[test])
        assert predicted.shape == test.shape
        assert set(predicted.tolist()) <= {1, 2}


class TestRunCv:
    """Test cases for the repeated k-fold evaluation."""

    def test_report_shape(self, cluster_features, elm_section):
        report = run_cv(cluster_features, elm_section, k=4, repeats=3, seed=2)
        assert len(report.evaluations) == 12
        assert [(ev.repeat, ev.fold) for ev in report.evaluations] == [
            (repeat, fold) for repeat in range(1, 4) for fold in range(1, 5)
        ]
        assert len(report.per_fold_class_mean()) == 4
        assert report.label == "elm"

    def test_separable_clusters_classified(self, cluster_features, elm_section):
        report = run_cv(cluster_features, elm_section, k=4, repeats=2, seed=2)
        assert report.overall_accuracy_mean() >= 0.9

    def test_deterministic(self, cluster_features, elm_section):
        first = run_cv(cluster_features, elm_section, k=3, repeats=2, seed=5)
        second = run_cv(cluster_features, elm_section, k=3, repeats=2, seed=5)
        assert first.to_dict() == second.to_dict()

    def test_jobs_do_not_change_results(self, cluster_features, elm_section):
        serial = run_cv(cluster_features, elm_section, k=3, repeats=2, seed=5, jobs=1)
        parallel = run_cv(cluster_features, elm_section, k=3, repeats=2, seed=5, jobs=4)
        assert serial.to_dict() == parallel.to_dict()

    def test_fixed_folds_reuse_split(self, cluster_features):
        validator = CrossValidator(k=4, repeats=3, master_seed=1, fixed_folds=True)
        splits = validator.splits(cluster_features)
        assert splits[0] == splits[1] == splits[2]

    def test_reshuffled_folds_differ(self, cluster_features):
        splits = CrossValidator(k=4, repeats=3, master_seed=1).splits(cluster_features)
        assert splits[0] != splits[1]

    def test_config_echo_carried(self, cluster_features, elm_section):
        report = run_cv(cluster_features, elm_section, k=2, repeats=1, config_echo={"runtime": {"master_seed": 0}})
        assert report.to_dict()["config"] == {"runtime": {"master_seed": 0}}

    def test_invalid_repeats(self):
        with pytest.raises(FoldAssignmentError):
            CrossValidator(repeats=0)


class TestCompareVariants:
    def test_labels_and_shared_splits(self, cluster_features, elm_section):
        section = elm_section.model_copy(update={"ae_hidden_nodes": 20, "max_iter": 30})
        echo = {"classifier": {"kind": "elm", "n_layers": 1}}
        comparison = compare_variants(
            cluster_features, section, ["elm", "helm:1", "helm:2"], k=3, repeats=1, seed=0, config_echo=echo
        )
        assert comparison.labels == ["elm", "helm:1", "helm:2"]
        sizes = [[ev.test_size for ev in report.evaluations] for report in comparison.reports]
        assert sizes[0] == sizes[1] == sizes[2]
        assert comparison.reports[2].config_echo["classifier"] == {"kind": "helm", "n_layers": 2}

    def test_requires_a_variant(self, cluster_features, elm_section):
        with pytest.raises(ValueError):
            compare_variants(cluster_features, elm_section, [])

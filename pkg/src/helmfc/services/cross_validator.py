"""Repeated k-fold cross-validation of ELM/HELM classifiers on precomputed features."""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.metrics import confusion_matrix

from helmfc.models import (
    BinaryLabel,
    ComparisonReport,
    CvReport,
    DimensionMismatchError,
    FeatureMatrix,
    FoldAssignment,
    FoldAssignmentError,
    FoldEvaluation,
)
from helmfc.models.run_config import ClassifierSection
from helmfc.services.classifier_factory import build_classifier, section_for_variant, variant_label
from helmfc.services.feature_scaler import FeatureScaler
from helmfc.services.seeding import derive_seed

logger = logging.getLogger(__name__)

BINARY_CLASSES = [BinaryLabel.NC, BinaryLabel.ADHD]


def _class_value(label: Any) -> int:
    return int(label.value) if isinstance(label, Enum) else int(label)


def kfold_split(
    n_subjects: int,
    labels: Optional[Sequence[Any]],
    k: int,
    seed: int,
    stratified: bool = True,
) -> FoldAssignment:
    """Seeded shuffle then round-robin fold assignment.

    Under stratification each class is shuffled and dealt separately, with the
    round-robin position carried from one class to the next so overall fold
    sizes also differ by at most one. Classes smaller than ``k`` are pooled and
    dealt unstratified after the others.
    """
    if k < 2:
        raise FoldAssignmentError(f"k must be at least 2, got {k}")
    if n_subjects < k:
        raise FoldAssignmentError(f"cannot split {n_subjects} subjects into {k} folds")
    rng = np.random.default_rng(seed)
    assignment = np.zeros(n_subjects, dtype=np.int64)
    if not stratified or labels is None:
        _deal(rng.permutation(n_subjects), assignment, k, 0)
        return FoldAssignment(k, assignment, seed, False)

    classes = np.array([_class_value(label) for label in labels], dtype=np.int64)
    if classes.size != n_subjects:
        raise DimensionMismatchError(f"{classes.size} labels for {n_subjects} subjects")
    offset = 0
    pooled: List[np.ndarray] = []
    for cls in np.unique(classes):
        members = np.flatnonzero(classes == cls)
        if members.size < k:
            logger.warning(
                "Class %d has %d subjects (< k=%d); assigning it without stratification", cls, members.size, k
            )
            pooled.append(members)
            continue
        offset = _deal(rng.permutation(members), assignment, k, offset)
    if pooled:
        _deal(rng.permutation(np.concatenate(pooled)), assignment, k, offset)
    return FoldAssignment(k, assignment, seed, True)


def _deal(order: np.ndarray, assignment: np.ndarray, k: int, offset: int) -> int:
    assignment[order] = (offset + np.arange(order.size)) % k + 1
    return (offset + order.size) % k


def per_class_accuracy(
    predicted: Sequence[Any], actual: Sequence[Any], class_set: Sequence[Any] = tuple(BINARY_CLASSES)
) -> Dict[Any, Optional[float]]:
    """Recall per class; a class with no actual members maps to None."""
    predicted_values = np.array([_class_value(label) for label in predicted], dtype=np.int64)
    actual_values = np.array([_class_value(label) for label in actual], dtype=np.int64)
    if predicted_values.shape != actual_values.shape:
        raise DimensionMismatchError(f"{predicted_values.size} predictions for {actual_values.size} subjects")
    class_values = [_class_value(cls) for cls in class_set]
    matrix = confusion_matrix(actual_values, predicted_values, labels=class_values)
    support = matrix.sum(axis=1)
    return {
        cls: (float(matrix[i, i] / support[i]) if support[i] else None)
        for i, cls in enumerate(class_set)
    }


@dataclass(frozen=True)
class FoldModel:
    """Scaler and classifier fitted on the training rows of one fold."""
    scaler: FeatureScaler
    model: Any
    classifier: Any

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.classifier.predict(self.model, self.scaler.transform(x))


def fit_fold(features: FeatureMatrix, train_indices: np.ndarray, section: ClassifierSection, seed: int) -> FoldModel:
    """Fit scaling and classifier on ``train_indices`` only."""
    train_x = features.values[train_indices]
    scaler = FeatureScaler().fit(train_x)
    classifier = build_classifier(section, seed)
    model = classifier.fit(scaler.transform(train_x), features.class_indices[train_indices])
    return FoldModel(scaler, model, classifier)


def split_seed(master_seed: int, repeat: int, fixed_folds: bool) -> int:
    return derive_seed(master_seed, 1 if fixed_folds else repeat)


def fold_seed(master_seed: int, repeat: int, fold: int) -> int:
    return derive_seed(master_seed, repeat, fold)


class CrossValidator:
    """Runs (repeat, fold) evaluations, possibly concurrently, and merges them in order."""

    def __init__(self, k: int = 5, repeats: int = 30, master_seed: int = 0, stratified: bool = True,
                 fixed_folds: bool = False, jobs: int = 1):
        if repeats < 1:
            raise FoldAssignmentError("repeats must be at least 1")
        self.k = k
        self.repeats = repeats
        self.master_seed = master_seed
        self.stratified = stratified
        self.fixed_folds = fixed_folds
        self.jobs = max(1, jobs)

    def splits(self, features: FeatureMatrix) -> List[FoldAssignment]:
        """One assignment per repeat (1-based repeats)."""
        return [
            kfold_split(
                len(features), features.labels, self.k,
                split_seed(self.master_seed, repeat, self.fixed_folds), self.stratified,
            )
            for repeat in range(1, self.repeats + 1)
        ]

    def run(self, features: FeatureMatrix, section: ClassifierSection,
            config_echo: Optional[Dict[str, Any]] = None) -> CvReport:
        label = variant_label(section)
        tasks = [
            (repeat, fold, assignment)
            for repeat, assignment in enumerate(self.splits(features), start=1)
            for fold in range(1, self.k + 1)
        ]
        logger.info("Evaluating %s: %d repeats x %d folds on %d subjects", label, self.repeats, self.k, len(features))

        def evaluate(task: Tuple[int, int, FoldAssignment]) -> FoldEvaluation:
            repeat, fold, assignment = task
            return self._evaluate_fold(features, section, repeat, fold, assignment)

        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            evaluations = list(pool.map(evaluate, tasks))
        report = CvReport(self.k, self.repeats, list(BINARY_CLASSES), evaluations, dict(config_echo or {}), label)
        means = report.overall_class_mean()
        logger.info(
            "%s: mean NC %s, ADHD %s, overall %.4f",
            label, _fmt(means[BinaryLabel.NC]), _fmt(means[BinaryLabel.ADHD]), report.overall_accuracy_mean(),
        )
        return report

    def _evaluate_fold(self, features: FeatureMatrix, section: ClassifierSection, repeat: int, fold: int,
                       assignment: FoldAssignment) -> FoldEvaluation:
        train_indices = assignment.train_indices(fold)
        test_indices = assignment.test_indices(fold)
        started = time.perf_counter()
        fitted = fit_fold(features, train_indices, section, fold_seed(self.master_seed, repeat, fold))
        logger.debug("repeat %d fold %d: trained in %.3fs", repeat, fold, time.perf_counter() - started)
        predicted = fitted.predict(features.values[test_indices])
        actual = features.class_indices[test_indices]
        return FoldEvaluation(
            repeat=repeat,
            fold=fold,
            class_accuracy=per_class_accuracy(predicted, actual, BINARY_CLASSES),
            overall=float(np.mean(predicted == actual)),
            test_size=int(test_indices.size),
        )


def _fmt(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.4f}"


def run_cv(
    features: FeatureMatrix,
    section: ClassifierSection,
    k: int = 5,
    repeats: int = 30,
    seed: int = 0,
    stratified: bool = True,
    fixed_folds: bool = False,
    jobs: int = 1,
    config_echo: Optional[Dict[str, Any]] = None,
) -> CvReport:
    """Repeated k-fold CV; split seeds derive from (seed, repeat), classifier seeds from (seed, repeat, fold)."""
    validator = CrossValidator(k, repeats, seed, stratified, fixed_folds, jobs)
    return validator.run(features, section, config_echo)


def compare_variants(
    features: FeatureMatrix,
    section: ClassifierSection,
    variants: Sequence[str],
    k: int = 5,
    repeats: int = 30,
    seed: int = 0,
    stratified: bool = True,
    fixed_folds: bool = False,
    jobs: int = 1,
    config_echo: Optional[Dict[str, Any]] = None,
) -> ComparisonReport:
    """Same splits and seeds for every variant (``elm``, ``helm:<layers>``)."""
    if not variants:
        raise ValueError("at least one variant is required")
    validator = CrossValidator(k, repeats, seed, stratified, fixed_folds, jobs)
    reports = []
    for token in variants:
        variant = section_for_variant(section, token)
        reports.append(validator.run(features, variant, _variant_echo(config_echo, variant)))
    return ComparisonReport(reports)


def _variant_echo(config_echo: Optional[Dict[str, Any]], variant: ClassifierSection) -> Dict[str, Any]:
    echo = dict(config_echo or {})
    if isinstance(echo.get("classifier"), dict):
        echo["classifier"] = {**echo["classifier"], "kind": variant.kind.value, "n_layers": variant.n_layers}
    return echo

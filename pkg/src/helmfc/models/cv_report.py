from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from helmfc.models.subject_label import BinaryLabel

ClassAccuracy = Dict[BinaryLabel, Optional[float]]


def _mean_present(values: List[Optional[float]]) -> Optional[float]:
    present = [value for value in values if value is not None]
    if not present:
        return None
    return float(np.mean(present))


@dataclass(frozen=True)
class FoldEvaluation:
    """Held-out accuracy of one (repeat, fold) pair."""
    repeat: int
    fold: int
    class_accuracy: ClassAccuracy
    overall: float
    test_size: int

    def __post_init__(self):
        for value in list(self.class_accuracy.values()) + [self.overall]:
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValueError("Accuracies must lie in [0, 1]")


@dataclass(frozen=True)
class CvReport:
    """Fold-by-fold, class-by-class accuracy of a repeated k-fold run."""
    k: int
    repeats: int
    classes: List[BinaryLabel]
    evaluations: List[FoldEvaluation]
    config_echo: Dict[str, object] = field(default_factory=dict)
    label: str = ""

    def per_repeat_per_fold(self) -> Dict[tuple, Optional[float]]:
        """Accuracy keyed by (repeat, fold, class)."""
        return {
            (ev.repeat, ev.fold, cls): ev.class_accuracy.get(cls)
            for ev in self.evaluations
            for cls in self.classes
        }

    def per_fold_class_mean(self) -> List[ClassAccuracy]:
        """Fold x class matrix averaged over repeats; a class absent in every repeat stays None."""
        rows: List[ClassAccuracy] = []
        for fold in range(1, self.k + 1):
            fold_evals = [ev for ev in self.evaluations if ev.fold == fold]
            rows.append(
                {cls: _mean_present([ev.class_accuracy.get(cls) for ev in fold_evals]) for cls in self.classes}
            )
        return rows

    def overall_class_mean(self) -> ClassAccuracy:
        """Mean of the per-fold class means across folds."""
        per_fold = self.per_fold_class_mean()
        return {cls: _mean_present([row[cls] for row in per_fold]) for cls in self.classes}

    def overall_accuracy_mean(self) -> float:
        return float(np.mean([ev.overall for ev in self.evaluations])) if self.evaluations else 0.0

    def to_dict(self) -> Dict[str, object]:
        """JSON-ready structure with full-precision floats."""
        return {
            "label": self.label,
            "k": self.k,
            "repeats": self.repeats,
            "classes": [cls.name for cls in self.classes],
            "per_repeat_per_fold": [
                {
                    "repeat": ev.repeat,
                    "fold": ev.fold,
                    "test_size": ev.test_size,
                    "accuracy": {cls.name: ev.class_accuracy.get(cls) for cls in self.classes},
                    "overall": ev.overall,
                }
                for ev in self.evaluations
            ],
            "per_fold_class_mean": [
                {"fold": fold, **{cls.name: row[cls] for cls in self.classes}}
                for fold, row in enumerate(self.per_fold_class_mean(), start=1)
            ],
            "overall_class_mean": {cls.name: value for cls, value in self.overall_class_mean().items()},
            "overall_accuracy_mean": self.overall_accuracy_mean(),
            "config": self.config_echo,
        }


@dataclass(frozen=True)
class ComparisonReport:
    """Several CV reports computed on identical splits, one per classifier variant."""
    reports: List[CvReport]

    @property
    def labels(self) -> List[str]:
        return [report.label for report in self.reports]

    def to_dict(self) -> Dict[str, object]:
        return {"variants": [report.to_dict() for report in self.reports]}

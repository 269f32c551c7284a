from dataclasses import dataclass
from typing import List

import numpy as np

from helmfc.models.subject_label import BinaryLabel


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Classifier input: one feature row per subject, aligned with its label."""
    subject_ids: List[str]
    values: np.ndarray
    labels: List[BinaryLabel]
    kind: str

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2:
            raise ValueError("Feature matrix must be 2-D")
        if not (len(self.subject_ids) == values.shape[0] == len(self.labels)):
            raise ValueError("Subject ids, feature rows and labels must align")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "subject_ids", list(self.subject_ids))
        object.__setattr__(self, "labels", list(self.labels))

    @property
    def class_indices(self) -> np.ndarray:
        """1-based class index per subject."""
        return np.array([label.value for label in self.labels], dtype=np.int64)

    @property
    def dimension(self) -> int:
        return int(self.values.shape[1])

    def __len__(self) -> int:
        return int(self.values.shape[0])

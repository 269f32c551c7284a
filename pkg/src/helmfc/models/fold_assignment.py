from dataclasses import dataclass
from typing import List

import numpy as np


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    """Per-subject fold index in [1, k] produced by a seeded split."""
    k: int
    assignment: np.ndarray
    seed: int
    stratified: bool

    def __post_init__(self):
        assignment = np.array(self.assignment, dtype=np.int64, copy=True)
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if assignment.size and (assignment.min() < 1 or assignment.max() > self.k):
            raise ValueError(f"Fold indices must lie in [1, {self.k}]")
        assignment.setflags(write=False)
        object.__setattr__(self, "assignment", assignment)

    def fold_sizes(self) -> List[int]:
        return [int(np.sum(self.assignment == fold)) for fold in range(1, self.k + 1)]

    def test_indices(self, fold: int) -> np.ndarray:
        """Subjects held out in ``fold`` (1-based), ascending."""
        return np.flatnonzero(self.assignment == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        """Subjects used for training when ``fold`` is held out, ascending."""
        return np.flatnonzero(self.assignment != fold)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FoldAssignment):
            return False
        return (
            self.k == other.k
            and self.seed == other.seed
            and self.stratified == other.stratified
            and np.array_equal(self.assignment, other.assignment)
        )

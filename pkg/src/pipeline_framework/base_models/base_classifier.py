"""Abstract base class for trainable classifiers."""
from abc import ABC, abstractmethod
from typing import Generic, Sequence, TypeVar

import numpy as np

ModelType = TypeVar('ModelType')


class BaseClassifier(ABC, Generic[ModelType]):
    """A classifier that fits an immutable model and predicts 1-based class indices."""

    @abstractmethod
    def fit(self, x: np.ndarray, labels: Sequence[int]) -> ModelType:
        """Train on the rows of ``x`` and return the fitted model."""
        pass

    @abstractmethod
    def predict(self, model: ModelType, x: np.ndarray) -> np.ndarray:
        """Predict one class index per row of ``x``."""
        pass

    @abstractmethod
    def describe(self) -> str:
        """Short name used in reports and logs."""
        pass

    def training_accuracy(self, model: ModelType, x: np.ndarray, labels: Sequence[int]) -> float:
        """Fraction of training rows predicted correctly."""
        predicted = self.predict(model, x)
        return float(np.mean(predicted == np.asarray(labels)))

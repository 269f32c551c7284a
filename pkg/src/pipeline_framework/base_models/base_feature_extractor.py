"""Abstract base class for per-subject feature extractors."""
from abc import ABC, abstractmethod
from typing import Generic, TypeVar

import numpy as np

SubjectType = TypeVar('SubjectType')


class BaseFeatureExtractor(ABC, Generic[SubjectType]):
    """Turns one subject into a fixed-length real feature vector."""

    @abstractmethod
    def extract(self, subject: SubjectType) -> np.ndarray:
        """Feature vector of a single subject."""
        pass

    @abstractmethod
    def get_kind(self) -> str:
        """Identifier of the representation, written into feature stores."""
        pass

import numpy as np
from sklearn.preprocessing import MinMaxScaler


class FeatureScaler:
    """Column-wise min-max scaling to [0, 1], fitted on training rows and clipped on transform."""

    def __init__(self):
        self._scaler = MinMaxScaler(feature_range=(0.0, 1.0), clip=True)
        self._fitted = False

    @classmethod
    def from_bounds(cls, data_min: np.ndarray, data_max: np.ndarray) -> "FeatureScaler":
        """Rebuild a fitted scaler from stored column bounds."""
        scaler = cls()
        return scaler.fit(np.vstack([np.asarray(data_min, dtype=np.float64), np.asarray(data_max, dtype=np.float64)]))

    def fit(self, x: np.ndarray) -> "FeatureScaler":
        self._scaler.fit(np.asarray(x, dtype=np.float64))
        self._fitted = True
        return self

    def transform(self, x: np.ndarray) -> np.ndarray:
        if not self._fitted:
            raise ValueError("FeatureScaler must be fitted before transform")
        return self._scaler.transform(np.asarray(x, dtype=np.float64))

    def fit_transform(self, x: np.ndarray) -> np.ndarray:
        return self.fit(x).transform(x)

    @property
    def data_min(self) -> np.ndarray:
        return self._scaler.data_min_

    @property
    def data_max(self) -> np.ndarray:
        return self._scaler.data_max_

from dataclasses import dataclass

import numpy as np

from helmfc.models.errors import NonFiniteDataError


def _frozen(array: np.ndarray) -> np.ndarray:
    """Return a read-only float64 copy of ``array``."""
    frozen = np.array(array, dtype=np.float64, copy=True)
    frozen.setflags(write=False)
    return frozen


@dataclass(frozen=True, eq=False)
class TimeSeriesMatrix:
    """ROI signals of one subject: M rows (regions) by N columns (time points)."""
    subject_id: str
    data: np.ndarray

    def __post_init__(self):
        data = _frozen(self.data)
        self._validate_shape(data)
        self._validate_finite(data)
        object.__setattr__(self, "data", data)

    @property
    def m(self) -> int:
        """Number of ROIs."""
        return int(self.data.shape[0])

    @property
    def n(self) -> int:
        """Number of time points."""
        return int(self.data.shape[1])

    def with_data(self, data: np.ndarray) -> "TimeSeriesMatrix":
        """Copy of this subject with replaced samples."""
        return TimeSeriesMatrix(self.subject_id, data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeSeriesMatrix):
            return False
        return self.subject_id == other.subject_id and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f"TimeSeriesMatrix(subject_id={self.subject_id!r}, m={self.m}, n={self.n})"

    def _validate_shape(self, data: np.ndarray):
        if data.ndim != 2 or data.shape[0] == 0 or data.shape[1] == 0:
            raise ValueError("Time series must be a non-empty 2-D matrix")

    def _validate_finite(self, data: np.ndarray):
        if not np.all(np.isfinite(data)):
            row, col = np.argwhere(~np.isfinite(data))[0]
            raise NonFiniteDataError(
                f"subject {self.subject_id}: non-finite value at ROI {row}, time point {col}"
            )

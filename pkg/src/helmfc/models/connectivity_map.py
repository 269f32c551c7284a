from dataclasses import dataclass

import numpy as np

SYMMETRY_TOLERANCE = 1e-12


def upper_length(m: int) -> int:
    """Number of strict upper-triangle entries of an m x m matrix."""
    return m * (m - 1) // 2


@dataclass(frozen=True, eq=False)
class ConnectivityMap:
    """ROI x ROI correlation matrix of one subject, optionally Fisher z."""
    subject_id: str
    matrix: np.ndarray
    z_transformed: bool = False

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.float64, copy=True)
        self._validate_square(matrix)
        self._validate_symmetric(matrix)
        self._validate_values(matrix)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def m(self) -> int:
        return int(self.matrix.shape[0])

    def __repr__(self) -> str:
        return (
            f"ConnectivityMap(subject_id={self.subject_id!r}, m={self.m}, "
            f"z_transformed={self.z_transformed})"
        )

    def _validate_square(self, matrix: np.ndarray):
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 2:
            raise ValueError("Connectivity matrix must be square with at least 2 ROIs")

    def _validate_symmetric(self, matrix: np.ndarray):
        if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOLERANCE:
            raise ValueError("Connectivity matrix must be symmetric")

    def _validate_values(self, matrix: np.ndarray):
        off_diagonal = matrix[~np.eye(matrix.shape[0], dtype=bool)]
        if not np.all(np.isfinite(off_diagonal)):
            raise ValueError("Connectivity matrix has non-finite entries")
        if not self.z_transformed and np.any(np.abs(off_diagonal) > 1.0):
            raise ValueError("Correlations must lie in [-1, 1]")


@dataclass(frozen=True, eq=False)
class ConnectivityVector:
    """Strict upper triangle of a connectivity map, emitted row-major."""
    subject_id: str
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True).ravel()
        self._validate_triangular_length(values.size)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        """ROI count implied by the vector length."""
        return int(round((1 + np.sqrt(1 + 8 * self.values.size)) / 2))

    def __len__(self) -> int:
        return int(self.values.size)

    def _validate_triangular_length(self, length: int):
        m = int(round((1 + np.sqrt(1 + 8 * length)) / 2))
        if m < 2 or upper_length(m) != length:
            raise ValueError(f"Length {length} is not M(M-1)/2 for any M >= 2")

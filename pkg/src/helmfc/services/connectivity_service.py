import logging

import numpy as np

from helmfc.models import (
    AlreadyTransformedError,
    ConnectivityMap,
    ConnectivityVector,
    InsufficientTimepointsError,
    TimeSeriesMatrix,
    ZeroVarianceError,
    ZeroVariancePolicy,
)

logger = logging.getLogger(__name__)

FISHER_EPSILON = 1e-7
MIN_TIMEPOINTS = 3


class ConnectivityAnalyzer:
    """Seed-based connectivity: Pearson correlation between every pair of ROI signals."""

    def __init__(self, zero_variance: ZeroVariancePolicy = ZeroVariancePolicy.ERROR):
        self.zero_variance = zero_variance

    def correlation_matrix(self, ts: TimeSeriesMatrix) -> ConnectivityMap:
        """Pearson correlation of every ROI pair; symmetric with unit diagonal."""
        if ts.n < MIN_TIMEPOINTS:
            raise InsufficientTimepointsError(
                f"subject {ts.subject_id}: correlation needs at least {MIN_TIMEPOINTS} time points, has {ts.n}"
            )
        constant = self._constant_rows(ts)
        if constant.size and self.zero_variance is ZeroVariancePolicy.ERROR:
            raise ZeroVarianceError(int(constant[0]), ts.subject_id)

        matrix = np.zeros((ts.m, ts.m))
        varying = np.setdiff1d(np.arange(ts.m), constant)
        if varying.size > 1:
            block = np.corrcoef(ts.data[varying])
            matrix[np.ix_(varying, varying)] = block
        if constant.size:
            logger.warning(
                "Subject %s: %d constant ROI(s) mapped to zero correlation", ts.subject_id, constant.size
            )
        matrix = np.clip((matrix + matrix.T) / 2.0, -1.0, 1.0)
        np.fill_diagonal(matrix, 1.0)
        return ConnectivityMap(ts.subject_id, matrix, z_transformed=False)

    def fisher_z(self, connectivity: ConnectivityMap) -> ConnectivityMap:
        """Replace off-diagonal r by atanh(r) after clamping |r| below 1; diagonal becomes 0."""
        if connectivity.z_transformed:
            raise AlreadyTransformedError(f"subject {connectivity.subject_id}: map is already Fisher z")
        clamped = np.clip(connectivity.matrix, -1.0 + FISHER_EPSILON, 1.0 - FISHER_EPSILON)
        z = np.arctanh(clamped)
        np.fill_diagonal(z, 0.0)
        return ConnectivityMap(connectivity.subject_id, z, z_transformed=True)

    def vectorize_upper(self, connectivity: ConnectivityMap) -> ConnectivityVector:
        """Strict upper triangle, row-major, length M(M-1)/2."""
        rows, cols = np.triu_indices(connectivity.m, k=1)
        return ConnectivityVector(connectivity.subject_id, connectivity.matrix[rows, cols])

    def unvectorize(self, vector: ConnectivityVector, diagonal: float = 1.0) -> np.ndarray:
        """Rebuild the symmetric matrix a vector was taken from."""
        m = vector.m
        matrix = np.zeros((m, m))
        rows, cols = np.triu_indices(m, k=1)
        matrix[rows, cols] = vector.values
        matrix[cols, rows] = vector.values
        np.fill_diagonal(matrix, diagonal)
        return matrix

    def _constant_rows(self, ts: TimeSeriesMatrix) -> np.ndarray:
        return np.flatnonzero(np.ptp(ts.data, axis=1) == 0.0)

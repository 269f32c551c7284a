"""Local binary encoding of ROI value vectors into packed decimal codes."""
import logging
from typing import Union

import numpy as np

from helmfc.models import BinaryCodeVector, EncodedFeatures, EncodingError, GroupWidth, TimeSeriesMatrix

logger = logging.getLogger(__name__)


class LbemEncoder:
    """Neighbour-comparison encoder: 2M - 2 bits per time point, packed MSB-first into w-bit codes."""

    def __init__(self, group_width: Union[GroupWidth, int] = 6):
        self.group_width = group_width if isinstance(group_width, GroupWidth) else GroupWidth(group_width)

    def encode_column(self, p: np.ndarray) -> BinaryCodeVector:
        """Encode one time-point column of M ROI values."""
        column = np.asarray(p, dtype=np.float64).ravel()
        self._validate_values(column)
        return BinaryCodeVector(self._comparison_bits(column.reshape(-1, 1))[:, 0])

    def pack_groups(self, bits: BinaryCodeVector) -> np.ndarray:
        """Pack consecutive w-bit groups MSB-first; the last group is zero-padded on the right."""
        return self._pack(bits.bits.reshape(-1, 1))[:, 0]

    def unpack_groups(self, codes: np.ndarray, bit_length: int) -> BinaryCodeVector:
        """Inverse of ``pack_groups`` for a known bit length."""
        w = self.group_width.bits
        codes = np.asarray(codes, dtype=np.int64).ravel()
        shifts = np.arange(w - 1, -1, -1)
        bits = ((codes[:, None] >> shifts[None, :]) & 1).ravel()
        return BinaryCodeVector(bits[:bit_length])

    def encode_subject(self, ts: TimeSeriesMatrix) -> EncodedFeatures:
        """Encode every column of a subject into the y x N code matrix Z."""
        if ts.m < 2:
            raise EncodingError(f"subject {ts.subject_id}: encoding needs at least 2 ROIs, has {ts.m}")
        z_matrix = self._pack(self._comparison_bits(ts.data))
        logger.debug("Encoded subject %s into a %dx%d code matrix", ts.subject_id, *z_matrix.shape)
        return EncodedFeatures(ts.subject_id, z_matrix, self.group_width)

    def code_rows(self, roi_count: int) -> int:
        """y = ceil((2M - 2) / w)."""
        return self.group_width.group_count(2 * roi_count - 2)

    def _comparison_bits(self, p: np.ndarray) -> np.ndarray:
        """Bits for every column of an M x N matrix; ties encode as 1."""
        m = p.shape[0]
        bits = np.empty((2 * m - 2, p.shape[1]), dtype=np.uint8)
        # odd positions (1-based): p_i <= p_{i-1}, 2 <= i <= M
        bits[0::2] = p[1:] <= p[:-1]
        # even positions: p_i <= p_{i+1}, 2 <= i <= M-1
        bits[1:-1:2] = p[1:-1] <= p[2:]
        # wrap-around: p_M <= p_1
        bits[-1] = p[-1] <= p[0]
        return bits

    def _pack(self, bits: np.ndarray) -> np.ndarray:
        w = self.group_width.bits
        groups = self.group_width.group_count(bits.shape[0])
        padded = np.zeros((groups * w, bits.shape[1]), dtype=np.int64)
        padded[: bits.shape[0]] = bits
        weights = np.left_shift(1, np.arange(w - 1, -1, -1, dtype=np.int64))
        return np.einsum("gwn,w->gn", padded.reshape(groups, w, bits.shape[1]), weights)

    def _validate_values(self, column: np.ndarray):
        if column.size < 2:
            raise EncodingError(f"encoding needs at least 2 values, got {column.size}")
        if not np.all(np.isfinite(column)):
            raise EncodingError("cannot encode non-finite values")

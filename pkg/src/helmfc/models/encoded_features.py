from dataclasses import dataclass

import numpy as np

from helmfc.models.value_objects import GroupWidth


@dataclass(frozen=True, eq=False)
class BinaryCodeVector:
    """Neighbour-comparison bits of one time-point column, length 2M - 2."""
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8).ravel().copy()
        if bits.size < 2 or bits.size % 2 != 0:
            raise ValueError("Binary code length must be 2M - 2 for some M >= 2")
        if np.any(bits > 1):
            raise ValueError("Binary code entries must be 0 or 1")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def roi_count(self) -> int:
        return self.bits.size // 2 + 1

    def __len__(self) -> int:
        return int(self.bits.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryCodeVector):
            return False
        return np.array_equal(self.bits, other.bits)

    def __repr__(self) -> str:
        return f"BinaryCodeVector({''.join(str(b) for b in self.bits)})"


@dataclass(frozen=True, eq=False)
class EncodedFeatures:
    """LBEM code matrix Z (y x N) of one subject and its time-major flattening."""
    subject_id: str
    z_matrix: np.ndarray
    group_width: GroupWidth

    def __post_init__(self):
        z_matrix = np.asarray(self.z_matrix, dtype=np.int64).copy()
        if z_matrix.ndim != 2:
            raise ValueError("Code matrix must be 2-D")
        if z_matrix.size and (z_matrix.min() < 0 or z_matrix.max() > self.group_width.max_code):
            raise ValueError(f"Codes must lie in [0, {self.group_width.max_code}]")
        z_matrix.setflags(write=False)
        object.__setattr__(self, "z_matrix", z_matrix)

    @property
    def y(self) -> int:
        return int(self.z_matrix.shape[0])

    @property
    def n(self) -> int:
        return int(self.z_matrix.shape[1])

    @property
    def flat(self) -> np.ndarray:
        """Column-major (time-major) flattening of the code matrix."""
        return self.z_matrix.ravel(order="F")

    def scaled(self) -> np.ndarray:
        """Flat codes divided by 2^w - 1, i.e. mapped onto [0, 1]."""
        return self.flat.astype(np.float64) / float(self.group_width.max_code)

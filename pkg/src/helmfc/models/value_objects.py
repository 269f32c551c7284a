"""Value objects for encapsulating primitive configuration values."""
import re
from typing import Dict

ATLAS_PRESETS: Dict[str, int] = {
    "CC400": 392,
    "CC200": 200,
    "AAL": 116,
}

_CUSTOM_ATLAS = re.compile(r"^custom:(\d+)$")


class AtlasSpec:
    """Represents a brain parcellation and its region count M."""

    def __init__(self, name: str, roi_count: int):
        self._validate_roi_count(roi_count)
        self.name = name
        self.roi_count = roi_count

    @classmethod
    def parse(cls, selection: str) -> "AtlasSpec":
        """Build an atlas from a preset name or a ``custom:<M>`` token."""
        preset = ATLAS_PRESETS.get(selection.upper())
        if preset is not None:
            return cls(selection.upper(), preset)
        match = _CUSTOM_ATLAS.match(selection)
        if match is None:
            raise ValueError(
                f"unknown atlas '{selection}' (expected CC400, CC200, AAL or custom:<M>)"
            )
        return cls.custom(int(match.group(1)))

    @classmethod
    def custom(cls, roi_count: int) -> "AtlasSpec":
        """Build an ad-hoc atlas with the given region count."""
        return cls(f"custom:{roi_count}", roi_count)

    def to_selection(self) -> str:
        """Render the token that ``parse`` accepts."""
        return self.name

    def __eq__(self, other) -> bool:
        if not isinstance(other, AtlasSpec):
            return False
        return self.name == other.name and self.roi_count == other.roi_count

    def __hash__(self) -> int:
        return hash((self.name, self.roi_count))

    def __repr__(self) -> str:
        return f"AtlasSpec(name={self.name!r}, roi_count={self.roi_count})"

    def _validate_roi_count(self, roi_count: int):
        """Neighbour encoding needs at least two regions."""
        if roi_count < 2:
            raise ValueError("Atlas must have at least 2 ROIs")


class GroupWidth:
    """Number of bits packed into one LBEM decimal code."""

    MAXIMUM = 16

    def __init__(self, bits: int = 6):
        self._validate_bits(bits)
        self.bits = bits

    @property
    def max_code(self) -> int:
        """Largest code a group can hold, 2^w - 1."""
        return (1 << self.bits) - 1

    def group_count(self, bit_length: int) -> int:
        """Number of groups needed for ``bit_length`` bits."""
        return -(-bit_length // self.bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupWidth):
            return False
        return self.bits == other.bits

    def __repr__(self) -> str:
        return f"GroupWidth(bits={self.bits})"

    def _validate_bits(self, bits: int):
        """Validate that the width fits the supported range."""
        if not 1 <= bits <= self.MAXIMUM:
            raise ValueError(f"Group width must be between 1 and {self.MAXIMUM}")

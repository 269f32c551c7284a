from enum import Enum


class SubjectLabel(Enum):
    """Diagnostic label of a subject as it appears in a manifest."""
    NC = "NC"
    ADHD_C = "ADHD-C"
    ADHD_H = "ADHD-H"
    ADHD_I = "ADHD-I"

    @classmethod
    def parse(cls, token: str) -> "SubjectLabel":
        """Parse a manifest label token."""
        for label in cls:
            if label.value == token:
                return label
        raise ValueError(f"unknown label token '{token}'")

    def to_binary(self) -> "BinaryLabel":
        """Collapse ADHD subtypes into a single ADHD class."""
        return BinaryLabel.NC if self is SubjectLabel.NC else BinaryLabel.ADHD


class BinaryLabel(Enum):
    """Classification target; the value is the 1-based class index."""
    NC = 1
    ADHD = 2

    @classmethod
    def from_index(cls, index: int) -> "BinaryLabel":
        """Look up the label for a 1-based class index."""
        return cls(index)

from dataclasses import dataclass
from pathlib import Path

from helmfc.models.errors import ManifestError
from helmfc.models.subject_label import BinaryLabel, SubjectLabel

RESERVED_ID_CHARACTERS = ("/", "\\", "\0")


@dataclass(frozen=True)
class SubjectRecord:
    """One manifest row: a subject, its series file and its label."""
    subject_id: str
    path: Path
    label: SubjectLabel

    def __post_init__(self):
        self._validate_subject_id(self.subject_id)

    @property
    def binary_label(self) -> BinaryLabel:
        """Label with ADHD subtypes collapsed."""
        return self.label.to_binary()

    def _validate_subject_id(self, subject_id: str):
        # Ids become file names in the dataset and feature stores.
        if not subject_id:
            raise ManifestError("Subject id must not be empty")
        if subject_id in (".", "..") or any(char in subject_id for char in RESERVED_ID_CHARACTERS):
            raise ManifestError(f"Subject id '{subject_id}' cannot be used as a file name")

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from helmfc.models.errors import AtlasMismatchError, ManifestError
from helmfc.models.subject_label import BinaryLabel, SubjectLabel
from helmfc.models.subject_record import SubjectRecord
from helmfc.models.time_series import TimeSeriesMatrix
from helmfc.models.value_objects import AtlasSpec


@dataclass(frozen=True)
class CohortSummary:
    """Subject counts of a dataset, per subtype and per binary class."""
    subject_count: int
    roi_count: int
    timepoints: int
    subtype_counts: Dict[str, int]
    binary_counts: Dict[str, int]

    def to_dict(self) -> Dict[str, object]:
        return {
            "subject_count": self.subject_count,
            "roi_count": self.roi_count,
            "timepoints": self.timepoints,
            "subtype_counts": dict(self.subtype_counts),
            "binary_counts": dict(self.binary_counts),
        }


class Dataset:
    """An atlas plus an ordered list of labelled subject series."""

    def __init__(self, atlas: AtlasSpec, subjects: List[Tuple[SubjectRecord, TimeSeriesMatrix]]):
        self._validate_subjects(atlas, subjects)
        self.atlas = atlas
        self.subjects: Tuple[Tuple[SubjectRecord, TimeSeriesMatrix], ...] = tuple(subjects)

    @property
    def records(self) -> List[SubjectRecord]:
        return [record for record, _ in self.subjects]

    @property
    def series(self) -> List[TimeSeriesMatrix]:
        return [ts for _, ts in self.subjects]

    @property
    def binary_labels(self) -> List[BinaryLabel]:
        """Per-subject label with ADHD subtypes collapsed."""
        return [record.binary_label for record, _ in self.subjects]

    @property
    def subject_ids(self) -> List[str]:
        return [record.subject_id for record, _ in self.subjects]

    def timepoint_counts(self) -> List[int]:
        return [ts.n for _, ts in self.subjects]

    def is_equalized(self) -> bool:
        """True when every subject has the same number of time points."""
        return len(set(self.timepoint_counts())) <= 1

    def summarize(self) -> CohortSummary:
        """Count subjects per subtype and per binary class."""
        subtypes = Counter(record.label for record, _ in self.subjects)
        binary = Counter(record.binary_label for record, _ in self.subjects)
        counts = self.timepoint_counts()
        return CohortSummary(
            subject_count=len(self.subjects),
            roi_count=self.atlas.roi_count,
            timepoints=counts[0] if counts and self.is_equalized() else -1,
            subtype_counts={label.value: subtypes.get(label, 0) for label in SubjectLabel},
            binary_counts={label.name: binary.get(label, 0) for label in BinaryLabel},
        )

    def __len__(self) -> int:
        return len(self.subjects)

    def __repr__(self) -> str:
        return f"Dataset(atlas={self.atlas!r}, subjects={len(self.subjects)})"

    def _validate_subjects(self, atlas: AtlasSpec, subjects):
        seen = set()
        for record, ts in subjects:
            if record.subject_id in seen:
                raise ManifestError(f"duplicate subject id '{record.subject_id}'")
            seen.add(record.subject_id)
            if record.subject_id != ts.subject_id:
                raise ValueError(
                    f"record {record.subject_id} paired with series of {ts.subject_id}"
                )
            if ts.m != atlas.roi_count:
                raise AtlasMismatchError(
                    f"subject {ts.subject_id} has {ts.m} ROIs, atlas {atlas.name} has {atlas.roi_count}"
                )

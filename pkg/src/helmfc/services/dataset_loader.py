import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from helmfc.models import (
    AtlasMismatchError,
    AtlasSpec,
    Dataset,
    HelmfcError,
    ManifestError,
    NonFiniteDataError,
    NonNumericCellError,
    SubjectLabel,
    SubjectRecord,
    TimeSeriesMatrix,
    TimeSeriesTooShortError,
)

logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = ["subject_id", "path", "label"]
DEFAULT_TARGET_N = 230


@dataclass
class LoadOutcome:
    """Loaded dataset plus the subjects skipped under ``skip_invalid``."""
    dataset: Dataset
    skipped: List[Tuple[str, str]] = field(default_factory=list)


class DatasetLoader:
    """Reads manifests and ROI time-series files and equalizes their lengths."""

    def __init__(self, atlas: AtlasSpec, jobs: int = 1):
        self.atlas = atlas
        self.jobs = max(1, jobs)

    def load_manifest(self, path: Path) -> List[SubjectRecord]:
        """Parse a ``subject_id,path,label`` manifest; paths resolve against its directory."""
        path = Path(path)
        frame = self._read_manifest_frame(path)
        records: List[SubjectRecord] = []
        seen = set()
        for line_number, row in enumerate(frame.itertuples(index=False), start=2):
            record = self._parse_manifest_row(path, line_number, row)
            if record.subject_id in seen:
                raise ManifestError(f"{path}:{line_number}: duplicate subject id '{record.subject_id}'")
            seen.add(record.subject_id)
            records.append(record)
        logger.info("Manifest %s lists %d subjects", path, len(records))
        return records

    def load_timeseries(self, record: SubjectRecord) -> TimeSeriesMatrix:
        """Read one subject's M x N matrix and check it against the atlas."""
        values = self._read_numeric_matrix(record)
        if values.shape[0] != self.atlas.roi_count:
            raise AtlasMismatchError(
                f"subject {record.subject_id}: {values.shape[0]} ROI rows, "
                f"atlas {self.atlas.name} expects {self.atlas.roi_count}"
            )
        return TimeSeriesMatrix(record.subject_id, values)

    def equalize_timepoints(
        self, subjects: Sequence[TimeSeriesMatrix], target_n: int = DEFAULT_TARGET_N
    ) -> List[TimeSeriesMatrix]:
        """Keep the last ``target_n`` columns of every subject, dropping leading time points."""
        if target_n < 1:
            raise ValueError("target_n must be positive")
        too_short = [ts for ts in subjects if ts.n < target_n]
        if too_short:
            ts = too_short[0]
            raise TimeSeriesTooShortError(
                f"subject {ts.subject_id} has {ts.n} time points, {target_n} required"
            )
        return [self._keep_trailing(ts, target_n) for ts in subjects]

    def load_dataset(
        self, manifest: Path, target_n: int = DEFAULT_TARGET_N, skip_invalid: bool = False
    ) -> LoadOutcome:
        """Load, validate and equalize every subject listed in ``manifest``."""
        records = self.load_manifest(manifest)
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            results = list(pool.map(lambda record: self._load_checked(record, target_n), records))

        subjects: List[Tuple[SubjectRecord, TimeSeriesMatrix]] = []
        skipped: List[Tuple[str, str]] = []
        for record, (series, error) in zip(records, results):
            if error is None:
                subjects.append((record, series))
                continue
            if not skip_invalid:
                raise error
            logger.warning("Skipping subject %s: %s", record.subject_id, error)
            skipped.append((record.subject_id, str(error)))

        equalized = self.equalize_timepoints([ts for _, ts in subjects], target_n)
        dataset = Dataset(self.atlas, [(record, ts) for (record, _), ts in zip(subjects, equalized)])
        logger.info(
            "Loaded %d subjects (%d skipped), %d ROIs x %d time points",
            len(dataset), len(skipped), self.atlas.roi_count, target_n,
        )
        return LoadOutcome(dataset, skipped)

    def _load_checked(
        self, record: SubjectRecord, target_n: int
    ) -> Tuple[Optional[TimeSeriesMatrix], Optional[HelmfcError]]:
        try:
            series = self.load_timeseries(record)
            if series.n < target_n:
                raise TimeSeriesTooShortError(
                    f"subject {series.subject_id} has {series.n} time points, {target_n} required"
                )
            return series, None
        except HelmfcError as err:
            return None, err

    def _keep_trailing(self, ts: TimeSeriesMatrix, target_n: int) -> TimeSeriesMatrix:
        if ts.n == target_n:
            return ts
        return ts.with_data(ts.data[:, ts.n - target_n:])

    def _read_manifest_frame(self, path: Path) -> pd.DataFrame:
        if not path.is_file():
            raise ManifestError(f"manifest not found: {path}")
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as err:
            raise ManifestError(f"manifest {path} could not be parsed: {err}") from err
        except UnicodeDecodeError as err:
            raise ManifestError(f"manifest {path} is not valid UTF-8 text: {err}") from err
        if list(frame.columns) != MANIFEST_COLUMNS:
            raise ManifestError(
                f"manifest {path} must have header {','.join(MANIFEST_COLUMNS)}, got {','.join(frame.columns)}"
            )
        return frame

    def _parse_manifest_row(self, manifest: Path, line_number: int, row) -> SubjectRecord:
        subject_id, file_ref, token = ("" if pd.isna(value) else str(value).strip() for value in row)
        if not subject_id or not file_ref or not token:
            raise ManifestError(f"{manifest}:{line_number}: row has empty fields")
        try:
            label = SubjectLabel.parse(token)
        except ValueError as err:
            raise ManifestError(f"{manifest}:{line_number}: {err}") from err
        series_path = Path(file_ref)
        if not series_path.is_absolute():
            series_path = manifest.parent / series_path
        try:
            return SubjectRecord(subject_id, series_path, label)
        except ManifestError as err:
            raise ManifestError(f"{manifest}:{line_number}: {err}") from err

    def _read_numeric_matrix(self, record: SubjectRecord) -> np.ndarray:
        if not record.path.is_file():
            raise ManifestError(f"subject {record.subject_id}: file not found: {record.path}")
        try:
            frame = pd.read_csv(
                record.path, sep=r"[,\t]", engine="python", header=None, dtype=str,
                keep_default_na=False,
            )
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as err:
            raise NonNumericCellError(f"subject {record.subject_id}: unreadable matrix: {err}") from err
        except UnicodeDecodeError as err:
            raise NonNumericCellError(f"subject {record.subject_id}: file is not valid UTF-8 text: {err}") from err
        short_rows = frame.isna().to_numpy().any(axis=1)
        if short_rows.any():
            row = int(np.flatnonzero(short_rows)[0])
            raise NonNumericCellError(
                f"subject {record.subject_id}: ROI row {row} has fewer cells than the first row"
            )
        try:
            values = np.asarray(frame.apply(lambda column: column.str.strip()).to_numpy(), dtype=np.float64)
        except ValueError as err:
            raise NonNumericCellError(f"subject {record.subject_id}: non-numeric cell ({err})") from err
        if not np.all(np.isfinite(values)):
            row, col = np.argwhere(~np.isfinite(values))[0]
            raise NonFiniteDataError(
                f"subject {record.subject_id}: non-finite value at ROI {row}, time point {col}"
            )
        return values

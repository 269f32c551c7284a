"""Feature directories written by ``encode`` and ``connectivity`` and read by ``train``/``evaluate``."""
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from helmfc.models import (
    Dataset,
    FeatureMatrix,
    FeaturePath,
    GroupWidth,
    ManifestError,
    SubjectLabel,
    SubjectRecord,
    TimeSeriesMatrix,
)
from helmfc.services.connectivity_service import ConnectivityAnalyzer
from helmfc.services.lbem_encoder import LbemEncoder

logger = logging.getLogger(__name__)

INDEX_NAME = "index.csv"
METADATA_NAME = "features.json"
INDEX_COLUMNS = ["subject_id", "label", "matrix_file", "vector_file"]


class FeatureStore:
    """Per-subject feature files plus an index; vectors are stored one value per line."""

    def __init__(self, jobs: int = 1):
        self.jobs = max(1, jobs)

    def write_encoded(self, dataset: Dataset, encoder: LbemEncoder, out_dir: Path) -> Path:
        """Write each subject's y x N code matrix and its ``.flat`` vector."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        def write_one(ts: TimeSeriesMatrix) -> None:
            encoded = encoder.encode_subject(ts)
            np.savetxt(out_dir / f"{ts.subject_id}.csv", encoded.z_matrix, delimiter=",", fmt="%d")
            np.savetxt(out_dir / f"{ts.subject_id}.flat", encoded.flat, fmt="%d")

        self._for_each_subject(dataset, write_one)
        metadata = {"kind": FeaturePath.LBEM_TIMESERIES.value, "group_width": encoder.group_width.bits}
        return self._write_index(dataset, out_dir, "flat", metadata)

    def write_connectivity(
        self, dataset: Dataset, analyzer: ConnectivityAnalyzer, fisher_z: bool, out_dir: Path
    ) -> Path:
        """Write each subject's correlation (or Fisher z) matrix and its ``.vec`` upper triangle."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        def write_one(ts: TimeSeriesMatrix) -> None:
            connectivity = analyzer.correlation_matrix(ts)
            if fisher_z:
                connectivity = analyzer.fisher_z(connectivity)
            np.savetxt(out_dir / f"{ts.subject_id}.csv", connectivity.matrix, delimiter=",", fmt="%.17g")
            np.savetxt(out_dir / f"{ts.subject_id}.vec", analyzer.vectorize_upper(connectivity).values, fmt="%.17g")

        self._for_each_subject(dataset, write_one)
        metadata = {"kind": FeaturePath.CONNECTIVITY_VECTOR.value, "fisher_z": fisher_z}
        return self._write_index(dataset, out_dir, "vec", metadata)

    def read(self, in_dir: Path) -> FeatureMatrix:
        """Load the vectors of a feature directory as classifier input."""
        in_dir = Path(in_dir)
        metadata = self._read_metadata(in_dir)
        index = pd.read_csv(in_dir / INDEX_NAME, dtype=str, keep_default_na=False)
        scale = 1.0
        if metadata["kind"] == FeaturePath.LBEM_TIMESERIES.value:
            scale = float(GroupWidth(int(metadata["group_width"])).max_code)
        rows = [np.atleast_1d(np.loadtxt(in_dir / name, dtype=np.float64)) / scale for name in index["vector_file"]]
        labels = [SubjectLabel.parse(token).to_binary() for token in index["label"]]
        logger.info("Read %d feature vectors from %s", len(rows), in_dir)
        return FeatureMatrix(list(index["subject_id"]), np.vstack(rows), labels, str(metadata["kind"]))

    def relabel(self, features: FeatureMatrix, records: Sequence[SubjectRecord]) -> FeatureMatrix:
        """Order and label feature rows by a manifest; every manifest subject must be present."""
        position: Dict[str, int] = {sid: i for i, sid in enumerate(features.subject_ids)}
        missing = [record.subject_id for record in records if record.subject_id not in position]
        if missing:
            raise ManifestError(f"feature store lacks subjects listed in the manifest: {', '.join(missing[:5])}")
        order = [position[record.subject_id] for record in records]
        return FeatureMatrix(
            [record.subject_id for record in records],
            features.values[order],
            [record.binary_label for record in records],
            features.kind,
        )

    def _for_each_subject(self, dataset: Dataset, action) -> None:
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            list(pool.map(action, dataset.series))

    def _write_index(self, dataset: Dataset, out_dir: Path, vector_suffix: str, metadata: Dict[str, object]) -> Path:
        rows: List[Dict[str, str]] = [
            {
                "subject_id": record.subject_id,
                "label": record.label.value,
                "matrix_file": f"{record.subject_id}.csv",
                "vector_file": f"{record.subject_id}.{vector_suffix}",
            }
            for record in dataset.records
        ]
        index_path = out_dir / INDEX_NAME
        pd.DataFrame(rows, columns=INDEX_COLUMNS).to_csv(index_path, index=False)
        (out_dir / METADATA_NAME).write_text(json.dumps(metadata, indent=2) + "\n", encoding="utf-8")
        logger.info("Wrote %s features for %d subjects to %s", metadata["kind"], len(rows), out_dir)
        return index_path

    def _read_metadata(self, in_dir: Path) -> Dict[str, object]:
        metadata_path = in_dir / METADATA_NAME
        if not metadata_path.is_file():
            raise ManifestError(f"{in_dir} is not a feature directory (missing {METADATA_NAME})")
        return json.loads(metadata_path.read_text(encoding="utf-8"))

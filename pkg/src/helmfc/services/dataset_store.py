"""On-disk dataset directories: manifest.csv, one series file per subject, dataset.json."""
import json
import logging
from pathlib import Path
from typing import Dict

import numpy as np
import pandas as pd

from helmfc.models import AtlasSpec, Dataset, ManifestError
from helmfc.services.dataset_loader import DatasetLoader

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.csv"
METADATA_NAME = "dataset.json"
COHORT_NAME = "cohort.json"
SERIES_DIR = "ts"


class DatasetStore:
    """Writes and reads datasets in the directory layout shared by ingest, synth and the feature stages."""

    def write(self, dataset: Dataset, out_dir: Path) -> Path:
        """Write ``dataset`` under ``out_dir`` and return the manifest path."""
        out_dir = Path(out_dir)
        (out_dir / SERIES_DIR).mkdir(parents=True, exist_ok=True)
        rows = []
        for record, ts in dataset.subjects:
            relative = Path(SERIES_DIR) / f"{record.subject_id}.csv"
            np.savetxt(out_dir / relative, ts.data, delimiter=",", fmt="%.17g")
            rows.append({"subject_id": record.subject_id, "path": relative.as_posix(), "label": record.label.value})
        manifest = out_dir / MANIFEST_NAME
        pd.DataFrame(rows, columns=["subject_id", "path", "label"]).to_csv(manifest, index=False)
        self._write_json(out_dir / METADATA_NAME, self._metadata(dataset))
        self._write_json(out_dir / COHORT_NAME, dataset.summarize().to_dict())
        logger.info("Wrote %d subjects to %s", len(dataset), out_dir)
        return manifest

    def read(self, in_dir: Path, jobs: int = 1) -> Dataset:
        """Load a dataset directory written by ``write``."""
        in_dir = Path(in_dir)
        metadata_path = in_dir / METADATA_NAME
        if not metadata_path.is_file():
            raise ManifestError(f"{in_dir} is not a dataset directory (missing {METADATA_NAME})")
        metadata = json.loads(metadata_path.read_text(encoding="utf-8"))
        atlas = AtlasSpec(metadata["atlas"], int(metadata["roi_count"]))
        loader = DatasetLoader(atlas, jobs=jobs)
        outcome = loader.load_dataset(in_dir / MANIFEST_NAME, target_n=int(metadata["n_timepoints"]))
        return outcome.dataset

    def _metadata(self, dataset: Dataset) -> Dict[str, object]:
        counts = dataset.timepoint_counts()
        if not dataset.is_equalized():
            raise ValueError("Only equalized datasets can be written")
        return {
            "atlas": dataset.atlas.name,
            "roi_count": dataset.atlas.roi_count,
            "n_timepoints": counts[0] if counts else 0,
        }

    def _write_json(self, path: Path, payload: Dict[str, object]):
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")

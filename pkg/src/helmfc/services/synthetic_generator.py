"""Synthetic cohorts with a planted, class-dependent correlation block."""
import logging
from pathlib import Path
from typing import List, Tuple

import numpy as np

from helmfc.models import AtlasSpec, Dataset, SubjectLabel, SubjectRecord, TimeSeriesMatrix
from helmfc.services.seeding import derive_seed

logger = logging.getLogger(__name__)

BASE_LOADING = 0.6
ADHD_SUBTYPES = (SubjectLabel.ADHD_C, SubjectLabel.ADHD_I)


def block_size(m_rois: int) -> int:
    return max(2, m_rois // 5)


def block_layout(m_rois: int, effect: float, adhd: bool) -> Tuple[np.ndarray, float]:
    """ROI indices loading on the shared factor, and the loading itself."""
    size = block_size(m_rois)
    shift = int(round(effect * size)) if adhd else 0
    loading = BASE_LOADING + BASE_LOADING * effect if adhd else BASE_LOADING
    return (shift + np.arange(size)) % m_rois, loading


def generate_synthetic(n_per_class: int, m_rois: int, n_timepoints: int, effect: float, seed: int) -> Dataset:
    """Balanced NC/ADHD cohort; ``effect`` = 0 gives identically distributed classes.

    Every ROI carries unit-variance noise. A block of ROIs also loads on one shared
    factor; for ADHD subjects the block start moves by ``round(effect * B)`` ROIs
    and the loading grows by ``effect`` times the base loading.
    """
    if n_per_class < 1 or n_timepoints < 1:
        raise ValueError("subject and time point counts must be positive")
    if m_rois < 2:
        raise ValueError("at least two ROIs are required")
    if not 0.0 <= effect <= 1.0:
        raise ValueError(f"effect must lie in [0, 1], got {effect}")

    subjects: List[Tuple[SubjectRecord, TimeSeriesMatrix]] = []
    for index in range(n_per_class):
        for adhd in (False, True):
            ordinal = 2 * index + int(adhd)
            label = ADHD_SUBTYPES[index % 2] if adhd else SubjectLabel.NC
            subject_id = f"{'adhd' if adhd else 'nc'}{index + 1:04d}"
            rng = np.random.default_rng(derive_seed(seed, ordinal))
            rows, loading = block_layout(m_rois, effect, adhd)
            data = rng.standard_normal((m_rois, n_timepoints))
            data[rows] += loading * rng.standard_normal(n_timepoints)
            record = SubjectRecord(subject_id, Path(f"{subject_id}.csv"), label)
            subjects.append((record, TimeSeriesMatrix(subject_id, data)))
    logger.info(
        "Generated %d synthetic subjects (%d ROIs x %d time points, effect %.2f)",
        len(subjects), m_rois, n_timepoints, effect,
    )
    return Dataset(AtlasSpec.custom(m_rois), subjects)

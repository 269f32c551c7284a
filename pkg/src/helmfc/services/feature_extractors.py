import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence

import numpy as np

from helmfc.models import Dataset, FeatureMatrix, FeaturePath, TimeSeriesMatrix, ZeroVariancePolicy
from helmfc.models.run_config import FeatureSection
from helmfc.services.connectivity_service import ConnectivityAnalyzer
from helmfc.services.lbem_encoder import LbemEncoder
from pipeline_framework.base_models import BaseFeatureExtractor

logger = logging.getLogger(__name__)


class LbemFeatureExtractor(BaseFeatureExtractor[TimeSeriesMatrix]):
    """Time-major flattened LBEM codes scaled to [0, 1] by 2^w - 1."""

    def __init__(self, group_width: int = 6):
        self.encoder = LbemEncoder(group_width)

    def extract(self, subject: TimeSeriesMatrix) -> np.ndarray:
        return self.encoder.encode_subject(subject).scaled()

    def get_kind(self) -> str:
        return FeaturePath.LBEM_TIMESERIES.value


class ConnectivityFeatureExtractor(BaseFeatureExtractor[TimeSeriesMatrix]):
    """Upper triangle of the (optionally Fisher z) correlation map."""

    def __init__(self, fisher_z: bool = True, zero_variance: ZeroVariancePolicy = ZeroVariancePolicy.ERROR):
        self.analyzer = ConnectivityAnalyzer(zero_variance)
        self.fisher_z = fisher_z

    def extract(self, subject: TimeSeriesMatrix) -> np.ndarray:
        connectivity = self.analyzer.correlation_matrix(subject)
        if self.fisher_z:
            connectivity = self.analyzer.fisher_z(connectivity)
        return self.analyzer.vectorize_upper(connectivity).values

    def get_kind(self) -> str:
        return FeaturePath.CONNECTIVITY_VECTOR.value


class CombinedFeatureExtractor(BaseFeatureExtractor[TimeSeriesMatrix]):
    """Concatenation of several extractors, in order."""

    def __init__(self, parts: Sequence[BaseFeatureExtractor[TimeSeriesMatrix]]):
        self.parts = list(parts)

    def extract(self, subject: TimeSeriesMatrix) -> np.ndarray:
        return np.concatenate([part.extract(subject) for part in self.parts])

    def get_kind(self) -> str:
        return FeaturePath.BOTH.value


def build_extractor(section: FeatureSection) -> BaseFeatureExtractor[TimeSeriesMatrix]:
    """Extractor for the configured feature path."""
    lbem = LbemFeatureExtractor(section.group_width)
    connectivity = ConnectivityFeatureExtractor(section.fisher_z, section.zero_variance)
    if section.path is FeaturePath.LBEM_TIMESERIES:
        return lbem
    if section.path is FeaturePath.CONNECTIVITY_VECTOR:
        return connectivity
    return CombinedFeatureExtractor([lbem, connectivity])


def extract_features(
    dataset: Dataset, extractor: BaseFeatureExtractor[TimeSeriesMatrix], jobs: int = 1
) -> FeatureMatrix:
    """Feature rows for every subject, in dataset order."""
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows: List[np.ndarray] = list(pool.map(extractor.extract, dataset.series))
    values = np.vstack(rows) if rows else np.zeros((0, 0))
    logger.info(
        "Extracted %s features: %d subjects x %d values", extractor.get_kind(), values.shape[0], values.shape[1]
    )
    return FeatureMatrix(dataset.subject_ids, values, dataset.binary_labels, extractor.get_kind())

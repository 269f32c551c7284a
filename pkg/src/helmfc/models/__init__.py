# Models package
from .errors import (
    AlreadyTransformedError,
    AtlasMismatchError,
    ConfigError,
    DimensionMismatchError,
    EncodingError,
    FistaDivergenceError,
    FoldAssignmentError,
    HelmfcError,
    InsufficientTimepointsError,
    LabelRangeError,
    ManifestError,
    ModelNotTrainedError,
    NonFiniteDataError,
    NonNumericCellError,
    NormalizationError,
    SingularSystemError,
    StageError,
    TimeSeriesTooShortError,
    ZeroVarianceError,
)
from .subject_label import BinaryLabel, SubjectLabel
from .value_objects import ATLAS_PRESETS, AtlasSpec, GroupWidth
from .subject_record import SubjectRecord
from .time_series import TimeSeriesMatrix
from .dataset import CohortSummary, Dataset
from .connectivity_map import ConnectivityMap, ConnectivityVector, upper_length
from .encoded_features import BinaryCodeVector, EncodedFeatures
from .elm_model import Activation, ElmConfig, ElmModel, LabelMatrix
from .helm_model import AutoencoderConfig, FistaProblem, FistaState, HelmConfig, HelmModel
from .fold_assignment import FoldAssignment
from .feature_matrix import FeatureMatrix
from .cv_report import ComparisonReport, CvReport, FoldEvaluation
from .run_config import ClassifierKind, FeaturePath, RunConfig, ZeroVariancePolicy

__all__ = [
    'AlreadyTransformedError',
    'AtlasMismatchError',
    'ConfigError',
    'DimensionMismatchError',
    'EncodingError',
    'FistaDivergenceError',
    'FoldAssignmentError',
    'HelmfcError',
    'InsufficientTimepointsError',
    'LabelRangeError',
    'ManifestError',
    'ModelNotTrainedError',
    'NonFiniteDataError',
    'NonNumericCellError',
    'NormalizationError',
    'SingularSystemError',
    'StageError',
    'TimeSeriesTooShortError',
    'ZeroVarianceError',
    'BinaryLabel',
    'SubjectLabel',
    'ATLAS_PRESETS',
    'AtlasSpec',
    'GroupWidth',
    'SubjectRecord',
    'TimeSeriesMatrix',
    'CohortSummary',
    'Dataset',
    'ConnectivityMap',
    'ConnectivityVector',
    'upper_length',
    'BinaryCodeVector',
    'EncodedFeatures',
    'Activation',
    'ElmConfig',
    'ElmModel',
    'LabelMatrix',
    'AutoencoderConfig',
    'FistaProblem',
    'FistaState',
    'HelmConfig',
    'HelmModel',
    'FoldAssignment',
    'FeatureMatrix',
    'ComparisonReport',
    'CvReport',
    'FoldEvaluation',
    'ClassifierKind',
    'FeaturePath',
    'RunConfig',
    'ZeroVariancePolicy',
]

"""Exception hierarchy for the helmfc pipeline."""
from typing import Optional


class HelmfcError(Exception):
    """Base class for every error raised by helmfc."""


class ManifestError(HelmfcError, ValueError):
    """Raised when a subject manifest is missing or malformed."""


class AtlasMismatchError(HelmfcError, ValueError):
    """Raised when a series' ROI count disagrees with the active atlas."""


class NonNumericCellError(HelmfcError, ValueError):
    """Raised when a time-series file holds a cell that is not a number."""


class NonFiniteDataError(HelmfcError, ValueError):
    """Raised when data contains NaN or infinite values."""


class TimeSeriesTooShortError(HelmfcError, ValueError):
    """Raised when a subject has fewer time points than requested."""


class InsufficientTimepointsError(HelmfcError, ValueError):
    """Raised when a correlation needs more time points than available."""


class ZeroVarianceError(HelmfcError, ValueError):
    """Raised when an ROI signal is constant and its correlation is undefined."""

    def __init__(self, roi_index: int, subject_id: str = ""):
        self.roi_index = roi_index
        self.subject_id = subject_id
        where = f" in subject {subject_id}" if subject_id else ""
        super().__init__(f"ROI {roi_index} has zero variance{where}")


class AlreadyTransformedError(HelmfcError, ValueError):
    """Raised on an attempt to Fisher-transform a map twice."""


class EncodingError(HelmfcError, ValueError):
    """Raised when a vector cannot be binary encoded."""


class LabelRangeError(HelmfcError, ValueError):
    """Raised when a class index falls outside [1, G]."""


class DimensionMismatchError(HelmfcError, ValueError):
    """Raised when array shapes do not line up."""


class ModelNotTrainedError(HelmfcError):
    """Raised when predicting with a model that has no output weights."""


class SingularSystemError(HelmfcError):
    """Raised when the output-weight system cannot be solved."""

    def __init__(self, message: str, condition_estimate: float):
        self.condition_estimate = condition_estimate
        super().__init__(f"{message} (condition estimate {condition_estimate:.3e})")


class FistaDivergenceError(HelmfcError):
    """Raised when a FISTA iterate stops being finite."""

    def __init__(self, iteration: int):
        self.iteration = iteration
        super().__init__(f"FISTA produced a non-finite iterate at iteration {iteration}")


class NormalizationError(HelmfcError, ValueError):
    """Raised when HELM input lies outside [0, 1]."""


class FoldAssignmentError(HelmfcError, ValueError):
    """Raised when a fold split is impossible."""


class ConfigError(HelmfcError, ValueError):
    """Raised when a run configuration cannot be loaded or validated."""


class StageError(HelmfcError):
    """Wraps a failure inside one pipeline stage."""

    def __init__(self, stage: str, cause: Exception, subject_id: Optional[str] = None):
        self.stage = stage
        self.cause = cause
        self.subject_id = subject_id
        subject = f" (subject {subject_id})" if subject_id else ""
        super().__init__(f"stage '{stage}' failed{subject}: {cause}")

import logging
import math
from typing import Sequence, Union

import numpy as np
import scipy.linalg

from helmfc.models import (
    DimensionMismatchError,
    ElmConfig,
    ElmModel,
    LabelMatrix,
    LabelRangeError,
    NonFiniteDataError,
    SingularSystemError,
)
from pipeline_framework.base_models import BaseClassifier

logger = logging.getLogger(__name__)

BINARY_CLASS_COUNT = 2


def encode_labels(labels: Sequence[int], g: int) -> LabelMatrix:
    """One row per sample: +1 at the (1-based) class column, -1 elsewhere."""
    indices = np.asarray(labels, dtype=np.int64).ravel()
    if g < 1:
        raise LabelRangeError("class count must be positive")
    out_of_range = indices[(indices < 1) | (indices > g)]
    if out_of_range.size:
        raise LabelRangeError(f"class index {int(out_of_range[0])} outside [1, {g}]")
    values = -np.ones((indices.size, g))
    values[np.arange(indices.size), indices - 1] = 1.0
    return LabelMatrix(values)


def solve_output_weights(
    h: np.ndarray, z: Union[LabelMatrix, np.ndarray], ridge_c: float
) -> np.ndarray:
    """beta = (H^T H + I/C)^-1 H^T Z for finite C, else the minimum-norm least-squares solution."""
    h = np.asarray(h, dtype=np.float64)
    targets = z.values if isinstance(z, LabelMatrix) else np.asarray(z, dtype=np.float64)
    if targets.ndim == 1:
        targets = targets.reshape(-1, 1)
    if h.ndim != 2 or h.shape[0] != targets.shape[0]:
        raise DimensionMismatchError(f"H has {h.shape[0]} rows, targets have {targets.shape[0]}")
    if not np.all(np.isfinite(h)):
        raise NonFiniteDataError("hidden layer output contains non-finite values")
    if math.isinf(ridge_c):
        return _pseudoinverse_solve(h, targets)
    return _ridge_solve(h, targets, ridge_c)


def _ridge_solve(h: np.ndarray, z: np.ndarray, ridge_c: float) -> np.ndarray:
    n, hidden = h.shape
    if hidden <= n:
        gram = h.T @ h + np.eye(hidden) / ridge_c
        return scipy.linalg.solve(gram, h.T @ z, assume_a="pos")
    # dual form: same minimizer, solved in the smaller N x N system
    gram = h @ h.T + np.eye(n) / ridge_c
    return h.T @ scipy.linalg.solve(gram, z, assume_a="pos")


def _pseudoinverse_solve(h: np.ndarray, z: np.ndarray) -> np.ndarray:
    try:
        beta, _, rank, _ = scipy.linalg.lstsq(h, z, lapack_driver="gelsd")
    except (np.linalg.LinAlgError, ValueError) as err:
        raise SingularSystemError(f"pseudoinverse solve failed: {err}", float(np.linalg.cond(h))) from err
    if rank < min(h.shape):
        logger.debug("Hidden layer is rank deficient (rank %d of %d)", rank, min(h.shape))
    return beta


class ElmClassifier(BaseClassifier[ElmModel]):
    """Extreme learning machine: random hidden layer, least-squares output layer."""

    def __init__(self, config: ElmConfig = None, class_count: int = BINARY_CLASS_COUNT):
        self.config = config or ElmConfig()
        self.class_count = class_count

    def initialize(self, input_dim: int) -> ElmModel:
        """Draw input weights and biases uniformly from [-1, 1] with the configured seed."""
        if input_dim < 1:
            raise DimensionMismatchError("input dimension must be positive")
        rng = np.random.default_rng(self.config.seed)
        weights = rng.uniform(-1.0, 1.0, size=(self.config.hidden_nodes, input_dim))
        biases = rng.uniform(-1.0, 1.0, size=self.config.hidden_nodes)
        return ElmModel(weights, biases, self.config.activation, self.config.ridge_c, self.config.seed)

    def build_hidden_layer(self, x: np.ndarray, model: ElmModel) -> np.ndarray:
        """H[j, i] = h(w_i . x_j + b_i)."""
        x = self._as_matrix(x)
        if x.shape[1] != model.input_dim:
            raise DimensionMismatchError(f"model expects {model.input_dim} features, got {x.shape[1]}")
        return model.activation.apply(x @ model.input_weights.T + model.biases)

    def fit(self, x: np.ndarray, labels: Sequence[int]) -> ElmModel:
        x = self._as_matrix(x)
        labels = np.asarray(labels, dtype=np.int64)
        if x.shape[0] == 0:
            raise DimensionMismatchError("cannot train on an empty training set")
        if labels.shape != (x.shape[0],):
            raise DimensionMismatchError(f"{labels.size} labels for {x.shape[0]} samples")
        model = self.initialize(x.shape[1])
        hidden = self.build_hidden_layer(x, model)
        beta = solve_output_weights(hidden, encode_labels(labels, self.class_count), self.config.ridge_c)
        logger.debug("Trained %s on %d samples", self.describe(), x.shape[0])
        return model.with_output_weights(beta)

    def decision_function(self, model: ElmModel, x: np.ndarray) -> np.ndarray:
        """Raw outputs h(x) beta, one column per class."""
        beta = model.trained_output_weights()
        return self.build_hidden_layer(x, model) @ beta

    def predict(self, model: ElmModel, x: np.ndarray) -> np.ndarray:
        """Argmax over output columns; ties go to the lowest class index."""
        return np.argmax(self.decision_function(model, x), axis=1) + 1

    def describe(self) -> str:
        return "elm"

    def _as_matrix(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim == 1:
            x = x.reshape(1, -1)
        if x.ndim != 2:
            raise DimensionMismatchError("input must be a samples x features matrix")
        return x

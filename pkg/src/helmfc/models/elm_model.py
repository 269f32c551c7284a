from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np
from scipy.special import expit

from helmfc.models.errors import ModelNotTrainedError

WEIGHT_DISTRIBUTION = "uniform[-1,1]"


class Activation(Enum):
    """Hidden-node activation functions."""
    SIGMOID = "sigmoid"
    TANH = "tanh"
    RELU = "relu"

    def apply(self, t: np.ndarray) -> np.ndarray:
        """Evaluate the activation elementwise."""
        if self is Activation.SIGMOID:
            return expit(t)
        if self is Activation.TANH:
            return np.tanh(t)
        return np.maximum(t, 0.0)


def _readonly(array: Optional[np.ndarray]) -> Optional[np.ndarray]:
    if array is None:
        return None
    frozen = np.array(array, dtype=np.float64, copy=True)
    frozen.setflags(write=False)
    return frozen


@dataclass(frozen=True)
class ElmConfig:
    """Hyperparameters of a single-hidden-layer ELM."""
    hidden_nodes: int = 1000
    activation: Activation = Activation.SIGMOID
    ridge_c: float = 1e6
    seed: int = 0

    def __post_init__(self):
        if self.hidden_nodes < 1:
            raise ValueError("ELM needs at least one hidden node")
        if not self.ridge_c > 0:
            raise ValueError("ridge_c must be positive or infinity")


@dataclass(frozen=True, eq=False)
class ElmModel:
    """Random input layer (w_i, b_i) plus solved output weights beta."""
    input_weights: np.ndarray
    biases: np.ndarray
    activation: Activation
    ridge_c: float
    seed: int
    output_weights: Optional[np.ndarray] = None

    def __post_init__(self):
        input_weights = _readonly(self.input_weights)
        biases = _readonly(self.biases)
        output_weights = _readonly(self.output_weights)
        self._validate_input_layer(input_weights, biases)
        self._validate_output_layer(input_weights, output_weights)
        object.__setattr__(self, "input_weights", input_weights)
        object.__setattr__(self, "biases", biases)
        object.__setattr__(self, "output_weights", output_weights)

    @property
    def hidden_nodes(self) -> int:
        return int(self.input_weights.shape[0])

    @property
    def input_dim(self) -> int:
        return int(self.input_weights.shape[1])

    @property
    def is_trained(self) -> bool:
        return self.output_weights is not None

    @property
    def class_count(self) -> int:
        return int(self.trained_output_weights().shape[1])

    def trained_output_weights(self) -> np.ndarray:
        """Output weights, or an error when the model has not been solved."""
        if self.output_weights is None:
            raise ModelNotTrainedError("ELM model has no output weights")
        return self.output_weights

    def with_output_weights(self, output_weights: np.ndarray) -> "ElmModel":
        return replace(self, output_weights=output_weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElmModel):
            return False
        same_output = (
            self.output_weights is None and other.output_weights is None
        ) or (
            self.output_weights is not None
            and other.output_weights is not None
            and np.array_equal(self.output_weights, other.output_weights)
        )
        return (
            np.array_equal(self.input_weights, other.input_weights)
            and np.array_equal(self.biases, other.biases)
            and self.activation is other.activation
            and self.ridge_c == other.ridge_c
            and self.seed == other.seed
            and same_output
        )

    def __repr__(self) -> str:
        state = "trained" if self.is_trained else "untrained"
        return (
            f"ElmModel(L={self.hidden_nodes}, d={self.input_dim}, "
            f"activation={self.activation.value}, {state})"
        )

    def _validate_input_layer(self, input_weights: np.ndarray, biases: np.ndarray):
        if input_weights.ndim != 2 or min(input_weights.shape) < 1:
            raise ValueError("Input weights must be an L x d matrix with L, d >= 1")
        if biases.shape != (input_weights.shape[0],):
            raise ValueError("Biases must have one entry per hidden node")
        if not (np.all(np.isfinite(input_weights)) and np.all(np.isfinite(biases))):
            raise ValueError("Input layer weights must be finite")

    def _validate_output_layer(self, input_weights: np.ndarray, output_weights: Optional[np.ndarray]):
        if output_weights is None:
            return
        if output_weights.ndim != 2 or output_weights.shape[0] != input_weights.shape[0]:
            raise ValueError("Output weights must be an L x G matrix")
        if not np.all(np.isfinite(output_weights)):
            raise ValueError("Output weights must be finite")


@dataclass(frozen=True, eq=False)
class LabelMatrix:
    """N x G target matrix with +1 at the true class and -1 elsewhere."""
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2:
            raise ValueError("Label matrix must be 2-D")
        if not np.all(np.isin(values, (-1.0, 1.0))):
            raise ValueError("Label matrix entries must be -1 or +1")
        if not np.all(np.sum(values == 1.0, axis=1) == 1):
            raise ValueError("Each label row must hold exactly one +1")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def class_count(self) -> int:
        return int(self.values.shape[1])

    def __len__(self) -> int:
        return int(self.values.shape[0])

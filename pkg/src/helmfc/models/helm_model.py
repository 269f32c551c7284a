from dataclasses import dataclass, field, replace
from typing import List, Tuple

import numpy as np

from helmfc.models.elm_model import Activation, ElmConfig, ElmModel


@dataclass(frozen=True, eq=False)
class FistaProblem:
    """L1-regularized reconstruction: minimize ||A beta - X||^2 + lambda ||beta||_1."""
    a: np.ndarray
    x: np.ndarray
    lam: float
    max_iter: int = 500
    tol: float = 1e-6

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        x = np.asarray(self.x, dtype=np.float64)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        self._validate_shapes(a, x)
        self._validate_parameters()
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "x", x)

    def objective(self, beta: np.ndarray) -> float:
        """Squared reconstruction error plus the weighted L1 norm."""
        residual = self.a @ beta - self.x
        return float(np.sum(residual * residual) + self.lam * np.sum(np.abs(beta)))

    def gradient(self, beta: np.ndarray) -> np.ndarray:
        """Gradient 2 A^T (A beta - X) of the smooth part."""
        return 2.0 * self.a.T @ (self.a @ beta - self.x)

    def _validate_shapes(self, a: np.ndarray, x: np.ndarray):
        if a.ndim != 2 or x.ndim != 2:
            raise ValueError("A and X must be matrices")
        if a.shape[0] != x.shape[0]:
            raise ValueError("A and X must have the same number of rows")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(x))):
            raise ValueError("A and X must be finite")

    def _validate_parameters(self):
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


@dataclass
class FistaState:
    """Mutable iterate bookkeeping of a running FISTA solve."""
    beta: np.ndarray
    beta_prev: np.ndarray
    y: np.ndarray
    gamma: float
    t: float = 1.0
    iter: int = 0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("Lipschitz constant must be positive")


@dataclass(frozen=True)
class AutoencoderConfig:
    """Hyperparameters of one ELM sparse autoencoder layer."""
    hidden_nodes: int = 1000
    lam: float = 1e-3
    max_iter: int = 500
    tol: float = 1e-6
    activation: Activation = Activation.SIGMOID
    seed: int = 0

    def __post_init__(self):
        if self.hidden_nodes < 1:
            raise ValueError("Autoencoder needs at least one hidden node")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")

    def with_seed(self, seed: int) -> "AutoencoderConfig":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class HelmConfig:
    """Stack depth, per-layer autoencoder settings and the final ELM."""
    n_layers: int = 1
    autoencoder: AutoencoderConfig = field(default_factory=AutoencoderConfig)
    elm: ElmConfig = field(default_factory=ElmConfig)

    def __post_init__(self):
        if self.n_layers < 0:
            raise ValueError("Layer count must be non-negative")

    @property
    def seed(self) -> int:
        return self.elm.seed


@dataclass(frozen=True, eq=False)
class HelmModel:
    """Frozen autoencoder layer weights followed by a supervised ELM."""
    layer_weights: Tuple[np.ndarray, ...]
    layer_activation: Activation
    final_elm: ElmModel
    ae_config: AutoencoderConfig

    def __post_init__(self):
        layers: List[np.ndarray] = []
        for weights in self.layer_weights:
            frozen = np.array(weights, dtype=np.float64, copy=True)
            frozen.setflags(write=False)
            layers.append(frozen)
        self._validate_chain(layers)
        object.__setattr__(self, "layer_weights", tuple(layers))

    @property
    def n_layers(self) -> int:
        return len(self.layer_weights)

    @property
    def input_dim(self) -> int:
        if self.layer_weights:
            return int(self.layer_weights[0].shape[1])
        return self.final_elm.input_dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, HelmModel):
            return False
        return (
            self.n_layers == other.n_layers
            and all(np.array_equal(a, b) for a, b in zip(self.layer_weights, other.layer_weights))
            and self.layer_activation is other.layer_activation
            and self.final_elm == other.final_elm
            and self.ae_config == other.ae_config
        )

    def __repr__(self) -> str:
        shapes = [tuple(w.shape) for w in self.layer_weights]
        return f"HelmModel(layers={shapes}, final_elm={self.final_elm!r})"

    def _validate_chain(self, layers: List[np.ndarray]):
        """Layer i maps d_{i-1} features to L_i; the next layer must consume L_i."""
        width = None
        for index, weights in enumerate(layers):
            if weights.ndim != 2:
                raise ValueError(f"Layer {index + 1} weights must be a matrix")
            if width is not None and weights.shape[1] != width:
                raise ValueError(
                    f"Layer {index + 1} expects {weights.shape[1]} inputs, previous layer emits {width}"
                )
            width = weights.shape[0]
        if width is not None and self.final_elm.input_dim != width:
            raise ValueError(
                f"Final ELM expects {self.final_elm.input_dim} inputs, stack emits {width}"
            )

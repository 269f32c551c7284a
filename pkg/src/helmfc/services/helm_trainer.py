import logging
from typing import List, Sequence

import numpy as np

from helmfc.models import AutoencoderConfig, DimensionMismatchError, FistaProblem, HelmConfig, HelmModel, NormalizationError
from helmfc.services.elm_trainer import ElmClassifier
from helmfc.services.fista_solver import FistaSolver
from helmfc.services.seeding import derive_seed
from pipeline_framework.base_models import BaseClassifier

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-12


def train_autoencoder_layer(h_prev: np.ndarray, config: AutoencoderConfig) -> np.ndarray:
    """ELM sparse autoencoder: random mapping A of ``h_prev``, then beta from the L1 reconstruction of ``h_prev``.

    Returns beta with shape (hidden_nodes, d_prev).
    """
    h_prev = np.asarray(h_prev, dtype=np.float64)
    if h_prev.ndim != 2 or h_prev.shape[0] == 0:
        raise DimensionMismatchError("autoencoder input must be a non-empty samples x features matrix")
    rng = np.random.default_rng(config.seed)
    weights = rng.uniform(-1.0, 1.0, size=(h_prev.shape[1], config.hidden_nodes))
    biases = rng.uniform(-1.0, 1.0, size=config.hidden_nodes)
    a = config.activation.apply(h_prev @ weights + biases)
    problem = FistaProblem(a, h_prev, config.lam, config.max_iter, config.tol)
    return FistaSolver().solve(problem).beta


class HelmClassifier(BaseClassifier[HelmModel]):
    """Hierarchical ELM: stacked sparse autoencoder layers, frozen once trained, then a supervised ELM."""

    def __init__(self, config: HelmConfig = None):
        self.config = config or HelmConfig()
        self.elm = ElmClassifier(self.config.elm)

    def layer_config(self, layer_index: int) -> AutoencoderConfig:
        """Autoencoder settings for 1-based ``layer_index``; its seed is derived from the master seed."""
        return self.config.autoencoder.with_seed(derive_seed(self.config.seed, layer_index))

    def fit(self, x: np.ndarray, labels: Sequence[int]) -> HelmModel:
        x = np.asarray(x, dtype=np.float64)
        self._validate_normalized(x)
        hidden = x
        layers: List[np.ndarray] = []
        for layer_index in range(1, self.config.n_layers + 1):
            layer_config = self.layer_config(layer_index)
            beta = train_autoencoder_layer(hidden, layer_config)
            layers.append(beta)
            hidden = layer_config.activation.apply(hidden @ beta.T)
            logger.debug(
                "Layer %d: %d -> %d features, %.1f%% zero weights",
                layer_index, beta.shape[1], beta.shape[0], 100.0 * np.mean(beta == 0.0),
            )
        final_elm = self.elm.fit(hidden, labels)
        return HelmModel(tuple(layers), self.config.autoencoder.activation, final_elm, self.config.autoencoder)

    def transform(self, model: HelmModel, x: np.ndarray) -> np.ndarray:
        """Forward pass through the frozen layers: H_i = g(H_{i-1} beta_i^T)."""
        hidden = np.asarray(x, dtype=np.float64)
        if hidden.ndim == 1:
            hidden = hidden.reshape(1, -1)
        if hidden.shape[1] != model.input_dim:
            raise DimensionMismatchError(f"model expects {model.input_dim} features, got {hidden.shape[1]}")
        for beta in model.layer_weights:
            hidden = model.layer_activation.apply(hidden @ beta.T)
        return hidden

    def predict(self, model: HelmModel, x: np.ndarray) -> np.ndarray:
        return self.elm.predict(model.final_elm, self.transform(model, x))

    def describe(self) -> str:
        return f"helm:{self.config.n_layers}"

    def _validate_normalized(self, x: np.ndarray):
        if x.ndim != 2 or x.shape[0] == 0:
            raise DimensionMismatchError("cannot train on an empty training set")
        if x.min() < -NORMALIZATION_TOLERANCE or x.max() > 1.0 + NORMALIZATION_TOLERANCE:
            raise NormalizationError(
                f"HELM input must be normalized to [0, 1], got range [{x.min():.4g}, {x.max():.4g}]"
            )

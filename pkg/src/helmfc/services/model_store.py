"""Deterministic model files: a zip of .npy members plus metadata.json."""
import io
import json
import logging
import math
import zipfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from helmfc.models import Activation, AutoencoderConfig, ElmModel, HelmfcError, HelmModel
from helmfc.models.elm_model import WEIGHT_DISTRIBUTION
from helmfc.services.elm_trainer import ElmClassifier
from helmfc.services.feature_scaler import FeatureScaler
from helmfc.services.helm_trainer import HelmClassifier

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
METADATA_MEMBER = "metadata.json"
FIXED_DATE = (1980, 1, 1, 0, 0, 0)

TrainedModel = Union[ElmModel, HelmModel]


@dataclass(frozen=True)
class SavedModel:
    """A trained classifier together with the scaling fitted alongside it."""
    model: TrainedModel
    scaler: Optional[FeatureScaler] = None

    @property
    def kind(self) -> str:
        return "helm" if isinstance(self.model, HelmModel) else "elm"

    def predict(self, x: np.ndarray) -> np.ndarray:
        if self.scaler is not None:
            x = self.scaler.transform(x)
        if isinstance(self.model, HelmModel):
            return HelmClassifier().predict(self.model, x)
        return ElmClassifier().predict(self.model, x)


def save_model(model: TrainedModel, path: Path, scaler: Optional[FeatureScaler] = None) -> Path:
    """Write ``model`` (and ``scaler``) to ``path``; equal models give byte-identical files."""
    arrays: Dict[str, np.ndarray] = {}
    if isinstance(model, HelmModel):
        for index, beta in enumerate(model.layer_weights, start=1):
            arrays[f"layer_{index}"] = beta
        elm = model.final_elm
    else:
        elm = model
    arrays["elm_input_weights"] = elm.input_weights
    arrays["elm_biases"] = elm.biases
    arrays["elm_output_weights"] = elm.trained_output_weights()
    if scaler is not None:
        arrays["scaler_data_min"] = scaler.data_min
        arrays["scaler_data_max"] = scaler.data_max

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with zipfile.ZipFile(path, "w", compression=zipfile.ZIP_STORED) as archive:
        for name in sorted(arrays):
            buffer = io.BytesIO()
            np.lib.format.write_array(buffer, np.ascontiguousarray(arrays[name]), allow_pickle=False)
            archive.writestr(_member(f"{name}.npy"), buffer.getvalue())
        metadata = _metadata(model, elm, scaler is not None)
        archive.writestr(_member(METADATA_MEMBER), json.dumps(metadata, indent=2, sort_keys=True) + "\n")
    logger.info("Saved %s model to %s", metadata["kind"], path)
    return path


def load_model(path: Path) -> SavedModel:
    path = Path(path)
    try:
        with zipfile.ZipFile(path) as archive:
            metadata = json.loads(archive.read(METADATA_MEMBER).decode("utf-8"))
            arrays = {
                name[: -len(".npy")]: np.lib.format.read_array(io.BytesIO(archive.read(name)), allow_pickle=False)
                for name in archive.namelist()
                if name.endswith(".npy")
            }
    except (OSError, KeyError, zipfile.BadZipFile) as err:
        raise HelmfcError(f"cannot read model file {path}: {err}") from err

    elm = ElmModel(
        arrays["elm_input_weights"],
        arrays["elm_biases"],
        Activation(metadata["activation"]),
        _parse_float(metadata["ridge_c"]),
        int(metadata["seed"]),
        arrays["elm_output_weights"],
    )
    model: TrainedModel = elm
    if metadata["kind"] == "helm":
        ae = metadata["autoencoder"]
        ae_config = AutoencoderConfig(
            hidden_nodes=int(ae["hidden_nodes"]),
            lam=float(ae["lambda"]),
            max_iter=int(ae["max_iter"]),
            tol=float(ae["tol"]),
            activation=Activation(ae["activation"]),
            seed=int(ae["seed"]),
        )
        layers = tuple(arrays[f"layer_{index}"] for index in range(1, int(metadata["n_layers"]) + 1))
        model = HelmModel(layers, Activation(metadata["layer_activation"]), elm, ae_config)
    scaler = None
    if metadata.get("scaled"):
        scaler = FeatureScaler.from_bounds(arrays["scaler_data_min"], arrays["scaler_data_max"])
    return SavedModel(model, scaler)


def _member(name: str) -> zipfile.ZipInfo:
    info = zipfile.ZipInfo(name, date_time=FIXED_DATE)
    info.external_attr = 0o644 << 16
    return info


def _metadata(model: TrainedModel, elm: ElmModel, scaled: bool) -> Dict[str, Any]:
    metadata: Dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "kind": "elm",
        "input_dim": model.input_dim,
        "hidden_nodes": elm.hidden_nodes,
        "class_count": elm.class_count,
        "activation": elm.activation.value,
        "ridge_c": "inf" if math.isinf(elm.ridge_c) else elm.ridge_c,
        "seed": elm.seed,
        "weight_distribution": WEIGHT_DISTRIBUTION,
        "scaled": scaled,
    }
    if isinstance(model, HelmModel):
        ae = model.ae_config
        metadata.update(
            kind="helm",
            n_layers=model.n_layers,
            layer_activation=model.layer_activation.value,
            autoencoder={
                "hidden_nodes": ae.hidden_nodes,
                "lambda": ae.lam,
                "max_iter": ae.max_iter,
                "tol": ae.tol,
                "activation": ae.activation.value,
                "seed": ae.seed,
            },
        )
    return metadata


def _parse_float(token: Any) -> float:
    return math.inf if token == "inf" else float(token)

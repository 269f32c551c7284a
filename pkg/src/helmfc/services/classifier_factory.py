"""Builds configured ELM/HELM classifiers from the classifier config section."""
import re
from typing import Tuple, Union

from helmfc.models import AutoencoderConfig, ClassifierKind, ConfigError, ElmConfig, HelmConfig
from helmfc.models.run_config import ClassifierSection
from helmfc.services.elm_trainer import ElmClassifier
from helmfc.services.helm_trainer import HelmClassifier

VARIANT_PATTERN = re.compile(r"^(elm|helm)(?::(\d+))?$")

Classifier = Union[ElmClassifier, HelmClassifier]


def parse_variant(token: str) -> Tuple[ClassifierKind, int]:
    """``elm`` -> (ELM, 0); ``helm:3`` -> (HELM, 3); bare ``helm`` means one layer."""
    match = VARIANT_PATTERN.match(token.strip().lower())
    if match is None:
        raise ConfigError(f"unknown classifier variant '{token}' (expected elm or helm:<layers>)")
    kind = ClassifierKind(match.group(1))
    if kind is ClassifierKind.ELM:
        if match.group(2) is not None:
            raise ConfigError("the elm variant takes no layer count")
        return kind, 0
    return kind, int(match.group(2) or 1)


def section_for_variant(section: ClassifierSection, token: str) -> ClassifierSection:
    kind, n_layers = parse_variant(token)
    return section.model_copy(update={"kind": kind, "n_layers": n_layers if kind is ClassifierKind.HELM else section.n_layers})


def variant_label(section: ClassifierSection) -> str:
    if section.kind is ClassifierKind.ELM:
        return "elm"
    return f"helm:{section.n_layers}"


def build_classifier(section: ClassifierSection, seed: int) -> Classifier:
    elm_config = ElmConfig(section.hidden_nodes, section.activation, section.ridge_c, seed)
    if section.kind is ClassifierKind.ELM:
        return ElmClassifier(elm_config)
    autoencoder = AutoencoderConfig(
        hidden_nodes=section.ae_hidden_nodes,
        lam=section.lam,
        max_iter=section.max_iter,
        tol=section.tol,
        activation=section.activation,
        seed=seed,
    )
    return HelmClassifier(HelmConfig(section.n_layers, autoencoder, elm_config))

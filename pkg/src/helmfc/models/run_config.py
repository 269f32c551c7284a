"""Declarative run configuration, loaded from YAML and overridden by CLI flags."""
import math
import os
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from helmfc.models.elm_model import Activation
from helmfc.models.errors import ConfigError
from helmfc.models.value_objects import AtlasSpec


class FeaturePath(str, Enum):
    """Which per-subject representation feeds the classifier."""
    LBEM_TIMESERIES = "lbem-timeseries"
    CONNECTIVITY_VECTOR = "connectivity-vector"
    BOTH = "both"


class ClassifierKind(str, Enum):
    ELM = "elm"
    HELM = "helm"


class ZeroVariancePolicy(str, Enum):
    ERROR = "error"
    AS_ZERO = "as-zero"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", validate_assignment=True)


class DataSection(_Section):
    manifest: Optional[Path] = None
    atlas: str = "CC400"
    target_n: int = Field(230, gt=0)
    skip_invalid: bool = False

    @field_validator("atlas")
    @classmethod
    def _known_atlas(cls, value: str) -> str:
        return AtlasSpec.parse(value).to_selection()

    def atlas_spec(self) -> AtlasSpec:
        return AtlasSpec.parse(self.atlas)


class FeatureSection(_Section):
    path: FeaturePath = FeaturePath.LBEM_TIMESERIES
    group_width: int = Field(6, ge=1, le=16)
    fisher_z: bool = True
    zero_variance: ZeroVariancePolicy = ZeroVariancePolicy.ERROR


class ClassifierSection(_Section):
    model_config = ConfigDict(extra="forbid", validate_assignment=True, populate_by_name=True)

    kind: ClassifierKind = ClassifierKind.HELM
    n_layers: int = Field(1, ge=0, le=16)
    hidden_nodes: int = Field(1000, ge=1)
    ae_hidden_nodes: int = Field(1000, ge=1)
    lam: float = Field(1e-3, ge=0.0, alias="lambda")
    ridge_c: float = Field(1e6, gt=0.0)
    activation: Activation = Activation.SIGMOID
    max_iter: int = Field(500, ge=1)
    tol: float = Field(1e-6, gt=0.0)


class EvaluationSection(_Section):
    k: int = Field(5, ge=2)
    repeats: int = Field(30, ge=1)
    stratified: bool = True
    fixed_folds: bool = False


class RuntimeSection(_Section):
    master_seed: int = Field(0, ge=0)
    jobs: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    output_dir: Path = Path("helmfc-out")


class RunConfig(_Section):
    """Complete, validated configuration of a pipeline run."""
    data: DataSection = Field(default_factory=DataSection)
    features: FeatureSection = Field(default_factory=FeatureSection)
    classifier: ClassifierSection = Field(default_factory=ClassifierSection)
    evaluation: EvaluationSection = Field(default_factory=EvaluationSection)
    runtime: RuntimeSection = Field(default_factory=RuntimeSection)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "RunConfig":
        try:
            return cls.model_validate(dict(mapping))
        except ValidationError as err:
            raise ConfigError(f"invalid configuration:\n{err}") from err

    @classmethod
    def from_yaml(cls, path: Path, overrides: Optional[Mapping[str, Any]] = None) -> "RunConfig":
        """Load ``path`` and apply dotted-key ``overrides`` on top (overrides win)."""
        try:
            loaded = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        except FileNotFoundError as err:
            raise ConfigError(f"config file not found: {path}") from err
        except yaml.YAMLError as err:
            raise ConfigError(f"config file {path} is not valid YAML: {err}") from err
        if not isinstance(loaded, dict):
            raise ConfigError(f"config file {path} must hold a mapping at top level")
        return cls.from_mapping(apply_overrides(loaded, overrides or {}))

    def with_overrides(self, overrides: Mapping[str, Any]) -> "RunConfig":
        return RunConfig.from_mapping(apply_overrides(self.to_echo(), overrides))

    def to_echo(self) -> Dict[str, Any]:
        """Fully materialized, JSON-safe view of every setting."""
        echo = self.model_dump(mode="json", by_alias=True)
        echo["classifier"]["ridge_c"] = _float_token(self.classifier.ridge_c)
        return echo

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_echo(), sort_keys=False)


def _float_token(value: float) -> Any:
    return "inf" if math.isinf(value) else value


def apply_overrides(base: Mapping[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    """Merge ``{"section.key": value}`` overrides into a nested mapping; None values are ignored."""
    merged: Dict[str, Any] = {key: dict(value) if isinstance(value, dict) else value for key, value in base.items()}
    for dotted, value in overrides.items():
        if value is None:
            continue
        section, _, key = dotted.partition(".")
        if not key:
            raise ConfigError(f"override '{dotted}' must be of the form section.key")
        target = merged.setdefault(section, {})
        if not isinstance(target, dict):
            raise ConfigError(f"config section '{section}' must be a mapping")
        target[key] = value
    return merged

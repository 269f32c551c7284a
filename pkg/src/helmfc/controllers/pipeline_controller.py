import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, TypeVar

from helmfc.models import ConfigError, CvReport, Dataset, FeatureMatrix, FeaturePath, HelmfcError, RunConfig, StageError
from helmfc.services import (
    ConnectivityAnalyzer,
    DatasetLoader,
    DatasetStore,
    FeatureScaler,
    FeatureStore,
    LbemEncoder,
    build_classifier,
    build_extractor,
    extract_features,
    run_cv,
    save_model,
    write_report,
)
from helmfc.services.dataset_store import MANIFEST_NAME

logger = logging.getLogger(__name__)

T = TypeVar("T")

INCOMPLETE_MARKER = "INCOMPLETE"
FEATURES_DIR = "features"
MODEL_NAME = "model.npz"
REPORT_NAME = "report.json"
TABLE_NAME = "report.tsv"
CONFIG_NAME = "config.yaml"


@dataclass(frozen=True)
class PipelineResult:
    report: CvReport
    output_dir: Path

    @property
    def report_path(self) -> Path:
        return self.output_dir / REPORT_NAME

    @property
    def model_path(self) -> Path:
        return self.output_dir / MODEL_NAME


class PipelineController:
    """Runs ingest -> features -> evaluate -> final model for one configuration."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.output_dir = Path(config.runtime.output_dir)
        self.jobs = config.runtime.jobs

    def run(self) -> PipelineResult:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        marker = self.output_dir / INCOMPLETE_MARKER
        marker.write_text("run in progress or failed\n", encoding="utf-8")
        (self.output_dir / CONFIG_NAME).write_text(self.config.to_yaml(), encoding="utf-8")

        dataset = self._stage("ingest", self._ingest)
        features = self._stage("features", lambda: self._extract(dataset))
        report = self._stage("evaluate", lambda: self._evaluate(features))
        self._stage("model", lambda: self._train_final(features))
        self._stage("report", lambda: write_report(report, self.output_dir / REPORT_NAME, self.output_dir / TABLE_NAME))

        marker.unlink()
        logger.info("Run complete; outputs in %s", self.output_dir)
        return PipelineResult(report, self.output_dir)

    def _stage(self, name: str, action: Callable[[], T]) -> T:
        logger.info("Stage %s", name)
        try:
            return action()
        except StageError:
            raise
        except (HelmfcError, ValueError, OSError) as err:
            logger.error("Stage %s failed: %s", name, err)
            raise StageError(name, err, getattr(err, "subject_id", None) or None) from err

    def _ingest(self) -> Dataset:
        data = self.config.data
        if data.manifest is None:
            raise ConfigError("data.manifest is required")
        manifest = Path(data.manifest)
        if manifest.is_dir():
            manifest = manifest / MANIFEST_NAME
        loader = DatasetLoader(data.atlas_spec(), jobs=self.jobs)
        outcome = loader.load_dataset(manifest, target_n=data.target_n, skip_invalid=data.skip_invalid)
        summary = outcome.dataset.summarize()
        logger.info("Cohort: %s", summary.to_dict())
        return outcome.dataset

    def _extract(self, dataset: Dataset) -> FeatureMatrix:
        section = self.config.features
        self._write_feature_store(dataset)
        return extract_features(dataset, build_extractor(section), jobs=self.jobs)

    def _write_feature_store(self, dataset: Dataset):
        section = self.config.features
        store = FeatureStore(jobs=self.jobs)
        root = self.output_dir / FEATURES_DIR
        lbem_dir = root if section.path is FeaturePath.LBEM_TIMESERIES else root / FeaturePath.LBEM_TIMESERIES.value
        connectivity_dir = (
            root if section.path is FeaturePath.CONNECTIVITY_VECTOR else root / FeaturePath.CONNECTIVITY_VECTOR.value
        )
        if section.path in (FeaturePath.LBEM_TIMESERIES, FeaturePath.BOTH):
            store.write_encoded(dataset, LbemEncoder(section.group_width), lbem_dir)
        if section.path in (FeaturePath.CONNECTIVITY_VECTOR, FeaturePath.BOTH):
            store.write_connectivity(dataset, ConnectivityAnalyzer(section.zero_variance), section.fisher_z, connectivity_dir)

    def _evaluate(self, features: FeatureMatrix) -> CvReport:
        evaluation = self.config.evaluation
        return run_cv(
            features,
            self.config.classifier,
            k=evaluation.k,
            repeats=evaluation.repeats,
            seed=self.config.runtime.master_seed,
            stratified=evaluation.stratified,
            fixed_folds=evaluation.fixed_folds,
            jobs=self.jobs,
            config_echo=self.config.to_echo(),
        )

    def _train_final(self, features: FeatureMatrix) -> Path:
        scaler = FeatureScaler().fit(features.values)
        classifier = build_classifier(self.config.classifier, self.config.runtime.master_seed)
        model = classifier.fit(scaler.transform(features.values), features.class_indices)
        logger.info(
            "Final %s training accuracy %.4f",
            classifier.describe(),
            classifier.training_accuracy(model, scaler.transform(features.values), features.class_indices),
        )
        return save_model(model, self.output_dir / MODEL_NAME, scaler)


def run_pipeline(config: RunConfig) -> PipelineResult:
    return PipelineController(config).run()

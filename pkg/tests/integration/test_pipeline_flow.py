"""
Integration tests for the end-to-end pipeline: ingest, features, evaluation,
final model and reports working together on a small synthetic cohort.
"""
import json

import numpy as np
import pytest
import yaml

from helmfc.controllers import run_pipeline
from helmfc.controllers.pipeline_controller import INCOMPLETE_MARKER
from helmfc.models import RunConfig, StageError
from helmfc.services import DatasetStore, FeatureStore, generate_synthetic, load_model


@pytest.fixture
def dataset_dir(synthetic_dataset, tmp_path):
    DatasetStore().write(synthetic_dataset, tmp_path / "data")
    return tmp_path / "data"


def _config(dataset_dir, out_dir, **sections):
    mapping = {
        "data": {"manifest": str(dataset_dir), "atlas": "custom:10", "target_n": 60},
        "features": {"path": "connectivity-vector"},
        "classifier": {
            "kind": "helm", "n_layers": 1, "hidden_nodes": 60, "ae_hidden_nodes": 30,
            "ridge_c": 10.0, "max_iter": 50,
        },
        "evaluation": {"k": 4, "repeats": 2},
        "runtime": {"master_seed": 3, "jobs": 2, "output_dir": str(out_dir)},
    }
    for section, values in sections.items():
        mapping[section] = {**mapping[section], **values}
    return RunConfig.from_mapping(mapping)


class TestPipelineFlow:
    """Test cases for a complete pipeline run."""

    def test_outputs_written(self, dataset_dir, tmp_path):
        out = tmp_path / "out"
        result = run_pipeline(_config(dataset_dir, out))
        assert not (out / INCOMPLETE_MARKER).exists()
        for name in ("report.json", "report.tsv", "model.npz", "config.yaml", "features/index.csv"):
            assert (out / name).is_file(), name
        assert len(result.report.evaluations) == 8
        assert result.report_path == out / "report.json"

    def test_report_echoes_configuration(self, dataset_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(_config(dataset_dir, out))
        payload = json.loads((out / "report.json").read_text())
        assert payload["config"]["runtime"]["master_seed"] == 3
        assert payload["config"]["classifier"]["lambda"] == pytest.approx(1e-3)
        assert yaml.safe_load((out / "config.yaml").read_text())["evaluation"]["k"] == 4

    def test_synthetic_signal_detected(self, tmp_path):
        DatasetStore().write(generate_synthetic(40, 20, 120, 1.0, 11), tmp_path / "larger")
        config = _config(tmp_path / "larger", tmp_path / "out", data={"atlas": "custom:20", "target_n": 120})
        result = run_pipeline(config)
        assert result.report.overall_accuracy_mean() >= 0.8

    def test_final_model_predicts_stored_features(self, dataset_dir, tmp_path):
        out = tmp_path / "out"
        result = run_pipeline(_config(dataset_dir, out))
        features = FeatureStore().read(out / "features")
        predicted = load_model(result.model_path).predict(features.values)
        assert np.mean(predicted == features.class_indices) >= 0.9

    def test_rerun_is_reproducible(self, dataset_dir, tmp_path):
        config = _config(dataset_dir, tmp_path / "out")
        first = run_pipeline(config)
        report, model = first.report_path.read_bytes(), first.model_path.read_bytes()
        second = run_pipeline(config)
        assert second.report_path.read_bytes() == report
        assert second.model_path.read_bytes() == model

    def test_both_feature_paths_stored_separately(self, dataset_dir, tmp_path):
        out = tmp_path / "out"
        run_pipeline(_config(dataset_dir, out, features={"path": "both"}, evaluation={"k": 2, "repeats": 1}))
        assert (out / "features" / "lbem-timeseries" / "index.csv").is_file()
        assert (out / "features" / "connectivity-vector" / "index.csv").is_file()


class TestPipelineFailures:
    def test_atlas_mismatch_fails_ingest(self, dataset_dir, tmp_path):
        out = tmp_path / "out"
        with pytest.raises(StageError) as info:
            run_pipeline(_config(dataset_dir, out, data={"atlas": "custom:8"}))
        assert info.value.stage == "ingest"
        assert "expects 8" in str(info.value)
        assert (out / INCOMPLETE_MARKER).exists()
        assert not (out / "report.json").exists()

    def test_missing_manifest(self, tmp_path):
        config = RunConfig.from_mapping({"runtime": {"output_dir": str(tmp_path / "out")}})
        with pytest.raises(StageError, match="data.manifest"):
            run_pipeline(config)

    def test_too_few_time_points(self, dataset_dir, tmp_path):
        with pytest.raises(StageError, match="time points"):
            run_pipeline(_config(dataset_dir, tmp_path / "out", data={"target_n": 100}))

    def test_evaluation_failure_names_stage(self, dataset_dir, tmp_path, mocker):
        mocker.patch(
            "helmfc.controllers.pipeline_controller.run_cv", side_effect=ValueError("ridge solve failed")
        )
        out = tmp_path / "out"
        with pytest.raises(StageError) as info:
            run_pipeline(_config(dataset_dir, out))
        assert info.value.stage == "evaluate"
        assert (out / "features" / "index.csv").is_file()
        assert (out / INCOMPLETE_MARKER).exists()

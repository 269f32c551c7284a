"""
helmfc command-line interface

Stages can be run one at a time (ingest, connectivity, encode, train,
evaluate, compare, synth) or end to end with ``helmfc run``.
"""
import functools
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import click

from helmfc.controllers import run_pipeline
from helmfc.models import (
    Activation,
    AtlasSpec,
    ClassifierKind,
    FeatureMatrix,
    FeaturePath,
    HelmfcError,
    RunConfig,
    ZeroVariancePolicy,
)
from helmfc.services import (
    ConnectivityAnalyzer,
    DatasetLoader,
    DatasetStore,
    FeatureScaler,
    FeatureStore,
    LbemEncoder,
    build_classifier,
    build_extractor,
    compare_variants,
    extract_features,
    generate_synthetic,
    run_cv,
    save_model,
    write_report,
)
from helmfc.services.dataset_store import MANIFEST_NAME

logger = logging.getLogger("helmfc")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def _reports_errors(command):
    """Turn library errors into a clean message and exit status 1."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HelmfcError as err:
            logger.error("%s", err)
            raise click.ClickException(str(err)) from err

    return wrapper


def _config(config_path: Optional[Path], overrides: Dict[str, Any]) -> RunConfig:
    if config_path is not None:
        return RunConfig.from_yaml(config_path, overrides)
    return RunConfig().with_overrides(overrides)


def _features_for_evaluation(config: RunConfig, features: str, manifest: Optional[Path]) -> FeatureMatrix:
    """Features from a stored directory, or extracted from the manifest's dataset when ``auto``."""
    jobs = config.runtime.jobs
    if features == "auto":
        manifest = manifest or config.data.manifest
        if manifest is None:
            raise click.UsageError("--features auto needs --manifest")
        manifest = Path(manifest)
        if manifest.is_dir():
            manifest = manifest / MANIFEST_NAME
        loader = DatasetLoader(config.data.atlas_spec(), jobs=jobs)
        dataset = loader.load_dataset(manifest, config.data.target_n, config.data.skip_invalid).dataset
        return extract_features(dataset, build_extractor(config.features), jobs=jobs)
    store = FeatureStore(jobs=jobs)
    matrix = store.read(Path(features))
    if manifest is not None:
        manifest = Path(manifest)
        if manifest.is_dir():
            manifest = manifest / MANIFEST_NAME
        records = DatasetLoader(config.data.atlas_spec(), jobs=jobs).load_manifest(manifest)
        matrix = store.relabel(matrix, records)
    return matrix


@click.group()
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default="INFO", show_default=True)
def cli(log_level: str):
    """Functional-connectivity classification with LBEM features and (H)ELM classifiers."""
    logging.basicConfig(level=log_level.upper(), format=LOG_FORMAT, force=True)


@cli.command()
@click.option("--manifest", type=click.Path(path_type=Path), required=True)
@click.option("--atlas", default="CC400", show_default=True, help="CC400, CC200, AAL or custom:<M>")
@click.option("--target-n", type=int, default=230, show_default=True)
@click.option("--skip-invalid", is_flag=True, help="Log and skip subjects that fail validation.")
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@click.option("--jobs", type=int, default=None)
@_reports_errors
def ingest(manifest: Path, atlas: str, target_n: int, skip_invalid: bool, out_dir: Path, jobs: Optional[int]):
    """Validate, equalize and store the time series listed in a manifest."""
    config = _config(None, {"data.atlas": atlas, "runtime.jobs": jobs})
    loader = DatasetLoader(AtlasSpec.parse(atlas), jobs=config.runtime.jobs)
    outcome = loader.load_dataset(manifest, target_n=target_n, skip_invalid=skip_invalid)
    DatasetStore().write(outcome.dataset, out_dir)
    for subject_id, reason in outcome.skipped:
        click.echo(f"skipped {subject_id}: {reason}", err=True)
    click.echo(f"{len(outcome.dataset)} subjects written to {out_dir}")


@cli.command()
@click.option("--in", "in_dir", type=click.Path(path_type=Path), required=True, help="Dataset directory.")
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@click.option(
    "--fisher-z/--no-fisher-z",
    default=True,
    show_default=True,
    help="Store Fisher z values; on by default to match the features.fisher_z config default.",
)
@click.option(
    "--zero-variance",
    type=click.Choice([policy.value for policy in ZeroVariancePolicy]),
    default=ZeroVariancePolicy.ERROR.value,
    show_default=True,
)
@click.option("--jobs", type=int, default=None)
@_reports_errors
def connectivity(in_dir: Path, out_dir: Path, fisher_z: bool, zero_variance: str, jobs: Optional[int]):
    """Correlation maps and upper-triangle vectors for every subject."""
    config = _config(None, {"runtime.jobs": jobs})
    dataset = DatasetStore().read(in_dir, jobs=config.runtime.jobs)
    analyzer = ConnectivityAnalyzer(ZeroVariancePolicy(zero_variance))
    FeatureStore(jobs=config.runtime.jobs).write_connectivity(dataset, analyzer, fisher_z, out_dir)
    click.echo(f"connectivity features for {len(dataset)} subjects written to {out_dir}")


@cli.command()
@click.option("--in", "in_dir", type=click.Path(path_type=Path), required=True, help="Dataset directory.")
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@click.option("--group-width", type=click.IntRange(1, 16), default=6, show_default=True)
@click.option("--jobs", type=int, default=None)
@_reports_errors
def encode(in_dir: Path, out_dir: Path, group_width: int, jobs: Optional[int]):
    """LBEM-encode every subject's time series."""
    config = _config(None, {"runtime.jobs": jobs})
    dataset = DatasetStore().read(in_dir, jobs=config.runtime.jobs)
    FeatureStore(jobs=config.runtime.jobs).write_encoded(dataset, LbemEncoder(group_width), out_dir)
    click.echo(f"LBEM codes for {len(dataset)} subjects written to {out_dir}")


@cli.command()
@click.option("--features", "features_dir", type=click.Path(path_type=Path), required=True)
@click.option("--model", "kind", type=click.Choice([kind.value for kind in ClassifierKind]), default="helm", show_default=True)
@click.option("--layers", type=int, default=None)
@click.option("--lambda", "lam", type=float, default=None)
@click.option("--hidden", type=int, default=None)
@click.option("--ridge-c", type=float, default=None)
@click.option("--activation", type=click.Choice([activation.value for activation in Activation]), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None)
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True)
@_reports_errors
def train(features_dir: Path, kind: str, layers, lam, hidden, ridge_c, activation, seed, config_path, out_path: Path):
    """Fit scaling and a classifier on every subject of a feature directory and save the model."""
    config = _config(
        config_path,
        {
            "classifier.kind": kind,
            "classifier.n_layers": layers,
            "classifier.lambda": lam,
            "classifier.hidden_nodes": hidden,
            "classifier.ridge_c": ridge_c,
            "classifier.activation": activation,
            "runtime.master_seed": seed,
        },
    )
    features = FeatureStore().read(features_dir)
    scaler = FeatureScaler().fit(features.values)
    classifier = build_classifier(config.classifier, config.runtime.master_seed)
    scaled = scaler.transform(features.values)
    model = classifier.fit(scaled, features.class_indices)
    save_model(model, out_path, scaler)
    accuracy = classifier.training_accuracy(model, scaled, features.class_indices)
    click.echo(f"{classifier.describe()} trained on {len(features)} subjects (training accuracy {accuracy:.4f})")


def _evaluation_options(command):
    options = [
        click.option("--features", default="auto", show_default=True, help="Feature directory or 'auto'."),
        click.option("--manifest", type=click.Path(path_type=Path), default=None),
        click.option("--config", "config_path", type=click.Path(path_type=Path), default=None),
        click.option("--feature-path", type=click.Choice([path.value for path in FeaturePath]), default=None),
        click.option("--atlas", default=None),
        click.option("--target-n", type=int, default=None),
        click.option("--k", type=int, default=None),
        click.option("--repeats", type=int, default=None),
        click.option("--seed", type=int, default=None),
        click.option("--stratify/--no-stratify", default=None),
        click.option("--fixed-folds/--reshuffle-folds", default=None),
        click.option("--jobs", type=int, default=None),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _evaluation_overrides(params: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "data.manifest": str(params["manifest"]) if params.get("manifest") else None,
        "data.atlas": params.get("atlas"),
        "data.target_n": params.get("target_n"),
        "features.path": params.get("feature_path"),
        "evaluation.k": params.get("k"),
        "evaluation.repeats": params.get("repeats"),
        "evaluation.stratified": params.get("stratify"),
        "evaluation.fixed_folds": params.get("fixed_folds"),
        "runtime.master_seed": params.get("seed"),
        "runtime.jobs": params.get("jobs"),
    }


@cli.command()
@_evaluation_options
@click.option("--classifier", type=click.Choice([kind.value for kind in ClassifierKind]), default=None)
@click.option("--layers", type=int, default=None)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=Path("report.json"), show_default=True)
@_reports_errors
def evaluate(features: str, config_path, out_path: Path, **params):
    """Repeated k-fold cross-validation of one classifier."""
    overrides = _evaluation_overrides(params)
    overrides.update({"classifier.kind": params.get("classifier"), "classifier.n_layers": params.get("layers")})
    config = _config(config_path, overrides)
    matrix = _features_for_evaluation(config, features, params.get("manifest"))
    evaluation = config.evaluation
    report = run_cv(
        matrix,
        config.classifier,
        k=evaluation.k,
        repeats=evaluation.repeats,
        seed=config.runtime.master_seed,
        stratified=evaluation.stratified,
        fixed_folds=evaluation.fixed_folds,
        jobs=config.runtime.jobs,
        config_echo=config.to_echo(),
    )
    _, table_path = write_report(report, out_path)
    click.echo(table_path.read_text(encoding="utf-8"), nl=False)


@cli.command()
@_evaluation_options
@click.option("--variants", default="elm,helm:1", show_default=True, help="Comma-separated, e.g. helm:1,helm:2,helm:3")
@click.option("--out", "out_prefix", type=click.Path(path_type=Path), default=Path("comparison"), show_default=True)
@_reports_errors
def compare(features: str, config_path, variants: str, out_prefix: Path, **params):
    """Cross-validate several classifier variants on identical splits and seeds."""
    config = _config(config_path, _evaluation_overrides(params))
    matrix = _features_for_evaluation(config, features, params.get("manifest"))
    evaluation = config.evaluation
    comparison = compare_variants(
        matrix,
        config.classifier,
        [token for token in variants.split(",") if token.strip()],
        k=evaluation.k,
        repeats=evaluation.repeats,
        seed=config.runtime.master_seed,
        stratified=evaluation.stratified,
        fixed_folds=evaluation.fixed_folds,
        jobs=config.runtime.jobs,
        config_echo=config.to_echo(),
    )
    out_prefix = Path(out_prefix)
    _, table_path = write_report(
        comparison, out_prefix.with_name(out_prefix.name + ".json"), out_prefix.with_name(out_prefix.name + ".tsv")
    )
    click.echo(table_path.read_text(encoding="utf-8"), nl=False)


@cli.command()
@click.option("--per-class", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--rois", type=click.IntRange(min=2), default=50, show_default=True)
@click.option("--timepoints", type=click.IntRange(min=1), default=120, show_default=True)
@click.option("--effect", type=click.FloatRange(0.0, 1.0), default=1.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), required=True)
@_reports_errors
def synth(per_class: int, rois: int, timepoints: int, effect: float, seed: int, out_dir: Path):
    """Write a synthetic dataset with a planted class-dependent correlation block."""
    dataset = generate_synthetic(per_class, rois, timepoints, effect, seed)
    manifest = DatasetStore().write(dataset, out_dir)
    click.echo(f"{len(dataset)} subjects written; manifest {manifest} (atlas {dataset.atlas.to_selection()})")


@cli.command()
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None)
@click.option("--manifest", type=click.Path(path_type=Path), default=None)
@click.option("--atlas", default=None)
@click.option("--feature-path", type=click.Choice([path.value for path in FeaturePath]), default=None)
@click.option("--classifier", type=click.Choice([kind.value for kind in ClassifierKind]), default=None)
@click.option("--layers", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--repeats", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--jobs", type=int, default=None)
@click.option("--output-dir", type=click.Path(path_type=Path), default=None)
@_reports_errors
def run(config_path, manifest, atlas, feature_path, classifier, layers, k, repeats, seed, jobs, output_dir):
    """Run ingest, feature extraction, evaluation and final training end to end."""
    config = _config(
        config_path,
        {
            "data.manifest": str(manifest) if manifest else None,
            "data.atlas": atlas,
            "features.path": feature_path,
            "classifier.kind": classifier,
            "classifier.n_layers": layers,
            "evaluation.k": k,
            "evaluation.repeats": repeats,
            "runtime.master_seed": seed,
            "runtime.jobs": jobs,
            "runtime.output_dir": str(output_dir) if output_dir else None,
        },
    )
    result = run_pipeline(config)
    click.echo((result.output_dir / "report.tsv").read_text(encoding="utf-8"), nl=False)


@cli.command(name="config")
@click.option("--print-defaults", is_flag=True, help="Print the fully materialized default configuration.")
def config_command(print_defaults: bool):
    """Inspect configuration."""
    if not print_defaults:
        raise click.UsageError("nothing to do; try --print-defaults")
    click.echo(RunConfig().to_yaml(), nl=False)


def main():
    """Console entry point."""
    cli(prog_name="helmfc")


if __name__ == "__main__":
    main()

"""
Acceptance checks: oracle equivalence of the encoder and solver, ELM
interpolation, end-to-end synthetic classification, null calibration, the
layer-depth ablation table and byte-level reproducibility of ``helmfc run``.
"""
import math
import time

import numpy as np
import pytest
import yaml
from click.testing import CliRunner

from helmfc.app import cli
from helmfc.models import BinaryLabel, ElmConfig, FistaProblem
from helmfc.models.run_config import ClassifierSection
from helmfc.services import (
    ConnectivityFeatureExtractor,
    ElmClassifier,
    FistaSolver,
    LbemEncoder,
    compare_variants,
    extract_features,
    generate_synthetic,
    lipschitz_constant,
    run_cv,
)
from helmfc.ui import TableRenderer

from oracles import ista, lasso_duality_gap, lasso_objective, lbem_bits_literal

HARNESS_SECTION = ClassifierSection(
    kind="helm", n_layers=1, hidden_nodes=400, ae_hidden_nodes=200, ridge_c=1.0, max_iter=100,
)


def _harness_features(effect, seed=0):
    dataset = generate_synthetic(100, 50, 120, effect, seed)
    return extract_features(dataset, ConnectivityFeatureExtractor(), jobs=4)


class TestEncoderAcceptance:
    """LBEM against a literal transcription of its defining comparisons."""

    def test_oracle_equivalence(self):
        rng = np.random.default_rng(1)
        encoder = LbemEncoder(6)
        started = time.perf_counter()
        for _ in range(1000):
            p = rng.standard_normal(int(rng.integers(2, 51)))
            assert encoder.encode_column(p).bits.tolist() == lbem_bits_literal(p)
        assert time.perf_counter() - started < 5.0

    @pytest.mark.parametrize("m, length", [(4, 6), (116, 230), (200, 398), (392, 782)])
    def test_length_law(self, m, length):
        p = np.random.default_rng(m).standard_normal(m)
        assert len(LbemEncoder(6).encode_column(p)) == length


class TestSolverAcceptance:
    """FISTA against ISTA and closed forms."""

    @pytest.mark.slow
    def test_matches_converged_ista(self):
        rng = np.random.default_rng(2)
        lambdas = (0.01, 0.1, 1.0)
        for instance in range(50):
            a = rng.standard_normal((20, 30)) / math.sqrt(20)
            x = rng.standard_normal((20, 1))
            lam = lambdas[instance % 3]
            fista = FistaSolver().solve(FistaProblem(a, x, lam, max_iter=20000, tol=1e-13)).beta
            converged = ista(a, x, lam, 2_000_000, gap_tol=1e-7)
            reference = lasso_objective(a, x, converged, lam)
            assert lasso_duality_gap(a, x, converged, lam) <= 1e-7 * reference
            assert lasso_objective(a, x, fista, lam) == pytest.approx(reference, rel=1e-4)

    def test_solution_certified_by_duality_gap(self):
        rng = np.random.default_rng(5)
        for lam in (0.01, 0.1, 1.0):
            a = rng.standard_normal((20, 30)) / math.sqrt(20)
            x = rng.standard_normal((20, 1))
            beta = FistaSolver().solve(FistaProblem(a, x, lam, max_iter=20000, tol=1e-13)).beta
            assert lasso_duality_gap(a, x, beta, lam) <= 1e-4 * lasso_objective(a, x, beta, lam)

    def test_equal_budget_not_worse_than_ista(self):
        rng = np.random.default_rng(3)
        for lam in (0.01, 0.1, 1.0):
            a = rng.standard_normal((20, 30)) / math.sqrt(20)
            x = rng.standard_normal((20, 1))
            for budget in (10, 50, 200):
                fista = FistaSolver().solve(FistaProblem(a, x, lam, max_iter=budget, tol=1e-15)).beta
                reference = lasso_objective(a, x, ista(a, x, lam, budget), lam)
                assert lasso_objective(a, x, fista, lam) <= reference + 1e-8 * max(1.0, reference)

    def test_gradient_and_lipschitz(self):
        rng = np.random.default_rng(4)
        a = rng.standard_normal((15, 10))
        x = rng.standard_normal((15, 2))
        problem = FistaProblem(a, x, 0.1)
        beta = rng.standard_normal((10, 2))
        gradient = problem.gradient(beta)
        step = 1e-6
        numeric = np.zeros_like(beta)
        for index in np.ndindex(beta.shape):
            shift = np.zeros_like(beta)
            shift[index] = step
            smooth_plus = np.sum((a @ (beta + shift) - x) ** 2)
            smooth_minus = np.sum((a @ (beta - shift) - x) ** 2)
            numeric[index] = (smooth_plus - smooth_minus) / (2 * step)
        assert np.linalg.norm(numeric - gradient) <= 1e-5 * np.linalg.norm(gradient)

        gamma = lipschitz_constant(a)
        for _ in range(100):
            b1, b2 = rng.standard_normal((10, 2)), rng.standard_normal((10, 2))
            change = np.linalg.norm(problem.gradient(b1) - problem.gradient(b2))
            assert change <= gamma * np.linalg.norm(b1 - b2) * (1 + 1e-6)

    def test_scalar_lasso_closed_form(self):
        result = FistaSolver().solve(FistaProblem(np.array([[1.0]]), np.array([1.0]), 1.0, max_iter=1000, tol=1e-12))
        assert result.beta[0, 0] == pytest.approx(0.5, abs=1e-6)


class TestElmAcceptance:
    def test_interpolation(self):
        """Twenty distinct samples are fitted exactly by 200 sigmoid nodes."""
        data_rng = np.random.default_rng(5)
        x = data_rng.uniform(size=(20, 5))
        labels = np.array([1, 2] * 10)
        perfect = 0
        for seed in range(20):
            classifier = ElmClassifier(ElmConfig(hidden_nodes=200, ridge_c=math.inf, seed=seed))
            perfect += classifier.training_accuracy(classifier.fit(x, labels), x, labels) == 1.0
        assert perfect >= 19


@pytest.mark.slow
class TestClassificationAcceptance:
    """End-to-end classification on the synthetic harness."""

    def test_planted_effect_is_found(self):
        comparison = compare_variants(_harness_features(1.0), HARNESS_SECTION, ["elm", "helm:1"], k=5, repeats=5, seed=0, jobs=4)
        elm, helm = (report.overall_accuracy_mean() for report in comparison.reports)
        assert helm >= 0.90
        assert elm >= 0.85
        assert helm >= elm - 0.02

    def test_null_effect_is_chance(self):
        report = run_cv(_harness_features(0.0), HARNESS_SECTION, k=5, repeats=5, seed=0, jobs=4)
        assert 0.4 <= report.overall_accuracy_mean() <= 0.6

    def test_depth_ablation_table(self):
        features = extract_features(generate_synthetic(30, 20, 120, 1.0, 1), ConnectivityFeatureExtractor())
        section = HARNESS_SECTION.model_copy(update={"hidden_nodes": 80, "ae_hidden_nodes": 40, "max_iter": 30})
        comparison = compare_variants(features, section, ["helm:1", "helm:2", "helm:3"], k=5, repeats=1, seed=0)
        lines = TableRenderer().render_comparison(comparison).splitlines()
        assert len(lines) == 7
        assert lines[0].split("\t") == [
            "Fold", "helm:1 NC", "helm:1 ADHD", "helm:2 NC", "helm:2 ADHD", "helm:3 NC", "helm:3 ADHD",
        ]
        assert [line.split("\t")[0] for line in lines[1:]] == [f"Fold {i}" for i in range(1, 6)] + ["Average"]
        assert all(len(line.split("\t")) == 7 for line in lines)
        assert all(report.classes == [BinaryLabel.NC, BinaryLabel.ADHD] for report in comparison.reports)


class TestReproducibilityAcceptance:
    def test_run_twice_is_byte_identical(self, tmp_path):
        runner = CliRunner()
        synth = runner.invoke(
            cli, ["synth", "--per-class", "10", "--rois", "6", "--timepoints", "30", "--seed", "9", "--out", str(tmp_path / "d")]
        )
        assert synth.exit_code == 0, synth.output
        config = {
            "data": {"manifest": str(tmp_path / "d"), "atlas": "custom:6", "target_n": 30},
            "features": {"path": "both"},
            "classifier": {"hidden_nodes": 40, "ae_hidden_nodes": 20, "max_iter": 30, "ridge_c": 10.0},
            "evaluation": {"k": 4, "repeats": 2},
            "runtime": {"master_seed": 17, "jobs": 3, "output_dir": str(tmp_path / "out")},
        }
        path = tmp_path / "run.yaml"
        path.write_text(yaml.safe_dump(config), encoding="utf-8")
        snapshots = []
        for _ in range(2):
            result = runner.invoke(cli, ["--log-level", "WARNING", "run", "--config", str(path)])
            assert result.exit_code == 0, result.output
            snapshots.append({name: (tmp_path / "out" / name).read_bytes() for name in ("report.json", "report.tsv", "model.npz")})
        assert snapshots[0] == snapshots[1]

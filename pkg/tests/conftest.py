"""Test configuration and fixtures."""
import pytest
import sys
from pathlib import Path

import numpy as np

# Add src (and this directory, for the oracles) to the Python path for testing
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    """Seeded generator so random test data is reproducible."""
    return np.random.default_rng(20240101)


@pytest.fixture
def small_atlas():
    """Custom atlas with five ROIs."""
    from helmfc.models import AtlasSpec
    return AtlasSpec.custom(5)


@pytest.fixture
def sample_series(rng):
    """A 5 ROI x 40 time point subject."""
    from helmfc.models import TimeSeriesMatrix
    return TimeSeriesMatrix("sub01", rng.standard_normal((5, 40)))


@pytest.fixture
def write_series():
    """Write a matrix as a comma-delimited series file."""
    def _write(path: Path, data: np.ndarray, delimiter: str = ",") -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, data, delimiter=delimiter, fmt="%.17g")
        return path
    return _write


@pytest.fixture
def manifest_dir(tmp_path, rng, write_series):
    """A manifest of four 5-ROI subjects with differing lengths, plus its directory."""
    rows = ["subject_id,path,label"]
    specs = [("s1", "NC", 50), ("s2", "ADHD-C", 45), ("s3", "NC", 60), ("s4", "ADHD-I", 40)]
    for subject_id, label, n in specs:
        write_series(tmp_path / "ts" / f"{subject_id}.csv", rng.standard_normal((5, n)))
        rows.append(f"{subject_id},ts/{subject_id}.csv,{label}")
    (tmp_path / "manifest.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    return tmp_path


@pytest.fixture
def synthetic_dataset():
    """Small separable synthetic cohort (20 per class, 10 ROIs, 60 time points)."""
    from helmfc.services import generate_synthetic
    return generate_synthetic(20, 10, 60, 1.0, 7)


@pytest.fixture
def small_classifier_section():
    """Fast classifier settings for tests that train many folds."""
    from helmfc.models.run_config import ClassifierSection
    return ClassifierSection(
        kind="helm", n_layers=1, hidden_nodes=60, ae_hidden_nodes=30, ridge_c=10.0, max_iter=50
    )


# Test markers configuration
def pytest_configure(config):
    """Configure custom pytest markers."""
    config.addinivalue_line(
        "markers", "unit: mark test as a unit test"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test"
    )
    config.addinivalue_line(
        "markers", "system: mark test as a system test"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )
    config.addinivalue_line(
        "markers", "acceptance: mark test as an acceptance criterion check"
    )


def pytest_collection_modifyitems(config, items):
    """Automatically mark tests based on their location."""
    for item in items:
        path = str(item.fspath)
        if "unit" in path:
            item.add_marker(pytest.mark.unit)

        if "integration" in path:
            item.add_marker(pytest.mark.integration)

        if "system" in path:
            item.add_marker(pytest.mark.system)

        if hasattr(item, 'cls') and item.cls and "Acceptance" in item.cls.__name__:
            item.add_marker(pytest.mark.acceptance)

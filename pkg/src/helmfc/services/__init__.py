# Services package
from .seeding import derive_seed
from .dataset_loader import DatasetLoader, LoadOutcome
from .dataset_store import DatasetStore
from .connectivity_service import ConnectivityAnalyzer
from .lbem_encoder import LbemEncoder
from .feature_scaler import FeatureScaler
from .feature_extractors import (
    CombinedFeatureExtractor,
    ConnectivityFeatureExtractor,
    LbemFeatureExtractor,
    build_extractor,
    extract_features,
)
from .feature_store import FeatureStore
from .elm_trainer import ElmClassifier, encode_labels, solve_output_weights
from .fista_solver import FistaResult, FistaSolver, lipschitz_constant, soft_threshold
from .helm_trainer import HelmClassifier, train_autoencoder_layer
from .classifier_factory import build_classifier, parse_variant
from .cross_validator import CrossValidator, compare_variants, fit_fold, kfold_split, per_class_accuracy, run_cv
from .model_store import SavedModel, load_model, save_model
from .synthetic_generator import generate_synthetic
from .report_writer import write_report

__all__ = [
    'derive_seed',
    'DatasetLoader',
    'LoadOutcome',
    'DatasetStore',
    'ConnectivityAnalyzer',
    'LbemEncoder',
    'FeatureScaler',
    'CombinedFeatureExtractor',
    'ConnectivityFeatureExtractor',
    'LbemFeatureExtractor',
    'build_extractor',
    'extract_features',
    'FeatureStore',
    'ElmClassifier',
    'encode_labels',
    'solve_output_weights',
    'FistaResult',
    'FistaSolver',
    'lipschitz_constant',
    'soft_threshold',
    'HelmClassifier',
    'train_autoencoder_layer',
    'build_classifier',
    'parse_variant',
    'CrossValidator',
    'compare_variants',
    'fit_fold',
    'kfold_split',
    'per_class_accuracy',
    'run_cv',
    'SavedModel',
    'load_model',
    'save_model',
    'generate_synthetic',
    'write_report',
]

"""Base models for the pipeline framework."""
from .base_classifier import BaseClassifier
from .base_feature_extractor import BaseFeatureExtractor

__all__ = ['BaseClassifier', 'BaseFeatureExtractor']

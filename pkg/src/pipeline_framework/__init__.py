"""Pipeline framework base classes shared by classifiers and feature extractors."""
__version__ = "0.1.0"

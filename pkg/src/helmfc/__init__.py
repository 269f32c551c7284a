"""ADHD-vs-control classification from ROI time series with LBEM features and ELM/HELM."""
__version__ = "0.1.0"

# Controllers package
from .pipeline_controller import PipelineController, PipelineResult, run_pipeline

__all__ = ['PipelineController', 'PipelineResult', 'run_pipeline']

"""Automated segmentation annotation for VHR imagery.

Builds instance and semantic labels for buildings, roads and high
vegetation by constructing per-class prompts over tiled rasters, querying
a promptable-segmenter backend, vectorizing the masks, and merging the
results; plus dataset tiling with entropy-weighted sampling and
confusion-matrix evaluation.
"""

from . import annotate, backends, dataset, evaluation, geometry, ingest, synthetic
from .config import PipelineConfig, load_config

__version__ = "0.1.0"

__all__ = [
    "PipelineConfig",
    "annotate",
    "backends",
    "dataset",
    "evaluation",
    "geometry",
    "ingest",
    "load_config",
    "synthetic",
]

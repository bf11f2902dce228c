"""Per-class annotation workflows, filtering, merging and rendering."""

from .dedupe import dedupe_across_tiles, polygon_iou
from .filtering import FilterConfig, filter_boxes
from .instances import (
    PROVENANCE_FOOTPRINT,
    PROVENANCE_ROAD,
    PROVENANCE_TEXT,
    InstanceAnnotation,
)
from .labels import ANNOTATED_CLASSES, CLASS_NAMES, NAME_TO_CLASS, ClassLabel
from .output import instance_to_feature, merge_and_write
from .pipeline import (
    AnnotateConfig,
    AnnotationSources,
    Checkpoint,
    annotate_class,
    tile_grid,
)
from .prompts import ROAD_BUFFER_RADIUS_M, footprints_to_prompts, roads_to_instances
from .semantic import render_semantic

__all__ = [
    "ANNOTATED_CLASSES",
    "AnnotateConfig",
    "AnnotationSources",
    "CLASS_NAMES",
    "Checkpoint",
    "ClassLabel",
    "FilterConfig",
    "InstanceAnnotation",
    "NAME_TO_CLASS",
    "PROVENANCE_FOOTPRINT",
    "PROVENANCE_ROAD",
    "PROVENANCE_TEXT",
    "ROAD_BUFFER_RADIUS_M",
    "annotate_class",
    "dedupe_across_tiles",
    "filter_boxes",
    "footprints_to_prompts",
    "instance_to_feature",
    "merge_and_write",
    "polygon_iou",
    "render_semantic",
    "roads_to_instances",
    "tile_grid",
]

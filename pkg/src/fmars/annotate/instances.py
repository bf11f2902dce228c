"""Class-tagged polygon instances produced by the annotation workflows."""
from __future__ import annotations

from dataclasses import dataclass

from ..geometry import WORLD_SPACE, PolygonGeometry
from .labels import ClassLabel

PROVENANCE_FOOTPRINT = "footprint+segmenter"
PROVENANCE_TEXT = "text+segmenter"
PROVENANCE_ROAD = "road-buffer"
PROVENANCES = (PROVENANCE_FOOTPRINT, PROVENANCE_TEXT, PROVENANCE_ROAD)


@dataclass(frozen=True)
class InstanceAnnotation:
    """One delineated object: world-space polygon, class, confidence.

    `source_tile` is the index of the annotation tile that produced the
    instance, or None for tile-independent sources (buffered roads).
    """

    geometry: PolygonGeometry
    label: ClassLabel
    confidence: float
    provenance: str
    source_tile: int | None = None

    def __post_init__(self):
        if self.geometry.space != WORLD_SPACE:
            raise ValueError("instance geometry must be in world coordinates")
        if self.label == ClassLabel.BACKGROUND:
            raise ValueError("background instances are never emitted")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence must be in [0, 1], got {self.confidence}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

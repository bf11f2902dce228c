"""Prompt construction from vector data sources."""
from __future__ import annotations

import numpy as np

from ..geometry import AffineTransform, PixelBox, buffer_polyline, world_to_pixel
from ..ingest import FootprintSet, RoadGraph
from .instances import PROVENANCE_ROAD, InstanceAnnotation
from .labels import ClassLabel

ROAD_BUFFER_RADIUS_M = 5.0


def footprints_to_prompts(
    fp: FootprintSet, t: AffineTransform, tile_window: PixelBox
) -> list:
    """Axis-aligned box prompts for footprints assigned to one tile.

    A footprint belongs to the tile containing its centroid (so border
    buildings are prompted exactly once); its AABB is converted to
    tile-local pixels and clamped to the tile.
    """
    w, h = tile_window.width, tile_window.height
    prompts = []
    for poly in fp.features:
        centroid = poly.to_shapely().centroid
        col, row = world_to_pixel(t, (centroid.x, centroid.y))
        if not tile_window.contains_point(col, row):
            continue
        vertices = np.vstack([np.asarray(r) for r in poly.rings()])
        pixels = world_to_pixel(t, vertices)
        x0, y0 = pixels.min(axis=0)
        x1, y1 = pixels.max(axis=0)
        box = PixelBox(
            float(x0) - tile_window.x0,
            float(y0) - tile_window.y0,
            float(x1) - tile_window.x0,
            float(y1) - tile_window.y0,
        )
        try:
            prompts.append(box.clamped(w, h))
        except ValueError:
            continue  # centroid inside but box degenerate after clamping
    return prompts


def roads_to_instances(rg: RoadGraph, radius_m: float = ROAD_BUFFER_RADIUS_M) -> list:
    """Buffer road centerlines into polygon instances.

    Roads bypass the segmenter entirely: the buffered capsule is the final
    delineation, with confidence 1.0. Each polyline stays a separate
    instance; semantic rendering merges overlaps anyway.
    """
    if not radius_m > 0:
        raise ValueError(f"radius_m must be positive, got {radius_m}")
    return [
        InstanceAnnotation(
            geometry=buffer_polyline(line, radius_m),
            label=ClassLabel.ROADS,
            confidence=1.0,
            provenance=PROVENANCE_ROAD,
            source_tile=None,
        )
        for line in rg.polylines
    ]

"""Polyline buffering: the set of points within a radius of a line."""
from __future__ import annotations

import numpy as np
import shapely.geometry

from .polygons import PolygonGeometry, WORLD_SPACE, from_shapely


def buffer_polyline(
    line, radius_m: float, space: str = WORLD_SPACE, segments_per_circle: int = 32
) -> PolygonGeometry:
    """Buffer a polyline by `radius_m` with round caps and round joins.

    Cap and join arcs are approximated polygonally; `segments_per_circle`
    must be at least 16 to keep the capsule area within 1% of the analytic
    value.
    """
    pts = np.asarray(line, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"polyline must be an (N, 2) sequence, got shape {pts.shape}")
    if pts.shape[0] < 2:
        raise ValueError("polyline needs at least 2 points")
    if not radius_m > 0:
        raise ValueError(f"buffer radius must be positive, got {radius_m}")
    if segments_per_circle < 16:
        raise ValueError("need at least 16 segments per full circle")
    if np.all(np.linalg.norm(np.diff(pts, axis=0), axis=1) == 0.0):
        raise ValueError("degenerate polyline: all points coincide")

    geom = shapely.geometry.LineString(pts).buffer(
        radius_m, quad_segs=segments_per_circle // 4
    )
    if geom.geom_type != "Polygon" or geom.is_empty:
        raise ValueError(f"buffer produced unexpected geometry {geom.geom_type}")
    return from_shapely(geom, space)

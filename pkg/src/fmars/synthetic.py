"""Deterministic synthetic inputs for tests and demos."""
from __future__ import annotations

import numpy as np

from .geometry import AffineTransform


def gradient_image(height: int, width: int) -> np.ndarray:
    """RGB image with a closed-form per-pixel formula (the window oracle)."""
    rows = np.arange(height)[:, None]
    cols = np.arange(width)[None, :]
    r = (rows * 7 + cols * 13) % 256
    g = (rows * 3 + cols * 5) % 256
    b = (rows + cols) % 256
    return np.stack([r, g, b], axis=-1).astype(np.uint8)


def gradient_pixel(row: int, col: int) -> tuple:
    """Closed-form value of `gradient_image` at one pixel."""
    return ((row * 7 + col * 13) % 256, (row * 3 + col * 5) % 256, (row + col) % 256)


def north_up_transform(
    origin_x: float = 430000.0, origin_y: float = 4580000.0, resolution_m: float = 0.3
) -> AffineTransform:
    """Typical north-up projected transform (y decreases with row)."""
    return AffineTransform(
        resolution_m, 0.0, origin_x, 0.0, -resolution_m, origin_y, resolution_m
    )


def feature_collection(features: list) -> dict:
    return {"type": "FeatureCollection", "features": features}


def polygon_feature(exterior, holes=(), feature_id=None, properties=None) -> dict:
    rings = [list(map(list, exterior))]
    rings.extend(list(map(list, h)) for h in holes)
    feature = {
        "type": "Feature",
        "geometry": {"type": "Polygon", "coordinates": rings},
        "properties": properties or {},
    }
    if feature_id is not None:
        feature["id"] = feature_id
    return feature


def linestring_feature(coords, properties=None) -> dict:
    return {
        "type": "Feature",
        "geometry": {"type": "LineString", "coordinates": list(map(list, coords))},
        "properties": properties or {},
    }


def square_ring(cx: float, cy: float, side: float) -> list:
    """Closed square ring centered at (cx, cy) in world coordinates."""
    h = side / 2.0
    return [
        (cx - h, cy - h),
        (cx + h, cy - h),
        (cx + h, cy + h),
        (cx - h, cy + h),
        (cx - h, cy - h),
    ]

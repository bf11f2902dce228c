"""Affine pixel/world coordinate transforms for georeferenced rasters.

Pixel coordinates are continuous (col, row) pairs where integer values sit
on pixel corners; the center of pixel (0, 0) is at (0.5, 0.5).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AffineTransform:
    """Maps pixel (col, row) to world (x, y).

    x = a*col + b*row + c
    y = d*col + e*row + f

    `resolution_m` is the ground sampling distance in meters per pixel
    (square pixels assumed). It must be supplied explicitly for rasters in
    geographic CRSs, where the transform coefficients are in degrees.
    """

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float
    resolution_m: float

    def __post_init__(self):
        det = self.a * self.e - self.b * self.d
        if det == 0.0:
            raise ValueError("affine transform is not invertible (zero determinant)")
        if not self.resolution_m > 0:
            raise ValueError(f"resolution_m must be positive, got {self.resolution_m}")

    @property
    def determinant(self) -> float:
        return self.a * self.e - self.b * self.d

    def shifted(self, col0: float, row0: float) -> "AffineTransform":
        """Transform for a sub-window whose origin is at pixel (col0, row0)."""
        x0, y0 = pixel_to_world(self, (col0, row0))
        return AffineTransform(self.a, self.b, x0, self.d, self.e, y0, self.resolution_m)


def identity_transform(resolution_m: float = 1.0) -> AffineTransform:
    return AffineTransform(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, resolution_m)


def pixel_to_world(t: AffineTransform, p) -> tuple:
    """Apply the affine map to pixel point(s) (col, row).

    Accepts a single (col, row) pair or an (N, 2) array; returns the same
    shape in world coordinates.
    """
    pts = np.asarray(p, dtype=float)
    col, row = pts[..., 0], pts[..., 1]
    x = t.a * col + t.b * row + t.c
    y = t.d * col + t.e * row + t.f
    if pts.ndim == 1:
        return (float(x), float(y))
    return np.stack([x, y], axis=-1)


def world_to_pixel(t: AffineTransform, p) -> tuple:
    """Invert the affine map: world (x, y) back to pixel (col, row)."""
    pts = np.asarray(p, dtype=float)
    x = pts[..., 0] - t.c
    y = pts[..., 1] - t.f
    det = t.determinant
    col = (t.e * x - t.b * y) / det
    row = (-t.d * x + t.a * y) / det
    if pts.ndim == 1:
        return (float(col), float(row))
    return np.stack([col, row], axis=-1)

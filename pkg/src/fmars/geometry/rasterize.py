"""Polygon and box rasterization with the pixel-center rule.

A pixel (row r, col c) is set iff its center (c + 0.5, r + 0.5) lies inside
the polygon (even-odd rule over all rings, so holes are excluded). Centers
exactly on a boundary follow a left-inclusive/right-exclusive convention,
matching half-open boxes.
"""
from __future__ import annotations

import numpy as np

from .boxes import PixelBox
from .polygons import PolygonGeometry


def rasterize_polygon(poly: PolygonGeometry, h: int, w: int) -> np.ndarray:
    """Rasterize a pixel-space polygon onto an h x w bool grid."""
    if h <= 0 or w <= 0:
        raise ValueError(f"grid dimensions must be positive: {h}x{w}")
    mask = np.zeros((h, w), dtype=bool)

    segments = []
    for ring in poly.rings():
        p, q = ring[:-1], ring[1:]
        keep = p[:, 1] != q[:, 1]  # horizontal edges never cross a scanline
        if np.any(keep):
            segments.append(np.hstack([p[keep], q[keep]]))
    if not segments:
        return mask
    edges = np.vstack(segments)
    ex0, ey0, ex1, ey1 = edges[:, 0], edges[:, 1], edges[:, 2], edges[:, 3]
    ey_lo = np.minimum(ey0, ey1)
    ey_hi = np.maximum(ey0, ey1)

    minx, miny, maxx, maxy = poly.bounds()
    row_lo = max(int(np.floor(miny - 0.5)), 0)
    row_hi = min(int(np.ceil(maxy)), h)
    col_lo = max(int(np.floor(minx - 0.5)), 0)
    col_hi = min(int(np.ceil(maxx)), w)
    if row_lo >= row_hi or col_lo >= col_hi:
        return mask

    centers_x = np.arange(col_lo, col_hi, dtype=float) + 0.5
    for row in range(row_lo, row_hi):
        yc = row + 0.5
        active = (ey_lo <= yc) & (yc < ey_hi)
        if not np.any(active):
            continue
        t = (yc - ey0[active]) / (ey1[active] - ey0[active])
        crossings = np.sort(ex0[active] + t * (ex1[active] - ex0[active]))
        inside = (np.searchsorted(crossings, centers_x, side="right") % 2) == 1
        mask[row, col_lo:col_hi] = inside
    return mask


def rasterize_box(box: PixelBox, h: int, w: int) -> np.ndarray:
    """Rasterize a half-open box: pixels whose centers fall in the box."""
    mask = np.zeros((h, w), dtype=bool)
    c0 = max(int(np.ceil(box.x0 - 0.5)), 0)
    c1 = min(int(np.ceil(box.x1 - 0.5)), w)
    r0 = max(int(np.ceil(box.y0 - 0.5)), 0)
    r1 = min(int(np.ceil(box.y1 - 0.5)), h)
    if c0 < c1 and r0 < r1:
        mask[r0:r1, c0:c1] = True
    return mask

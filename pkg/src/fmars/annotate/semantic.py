"""Semantic label rendering from instance annotations."""
from __future__ import annotations

import numpy as np

from ..geometry import AffineTransform, PixelBox, rasterize_polygon, world_to_pixel
from .labels import SEMANTIC_PRECEDENCE


def render_semantic(instances, tile_window: PixelBox, t: AffineTransform) -> np.ndarray:
    """Rasterize instances into a per-pixel class-index grid for one window.

    Classes are painted in precedence order so that where instances of
    different classes overlap, buildings beat roads beat high vegetation.
    Uncovered pixels stay background (0).
    """
    h = int(tile_window.height)
    w = int(tile_window.width)
    grid = np.zeros((h, w), dtype=np.uint8)
    for label in SEMANTIC_PRECEDENCE:
        for inst in instances:
            if inst.label != label:
                continue
            local = inst.geometry.transformed(
                lambda pts: world_to_pixel(t, pts)
                - np.array([tile_window.x0, tile_window.y0]),
                space="pixel",
            )
            minx, miny, maxx, maxy = local.bounds()
            if maxx <= 0 or maxy <= 0 or minx >= w or miny >= h:
                continue
            grid[rasterize_polygon(local, h, w)] = int(label)
    return grid

"""Deterministic in-process backends for tests, demos and golden runs.

Both mocks are pure functions of the tile bytes and request parameters, so
identical inputs produce bitwise-identical outputs.
"""
from __future__ import annotations

import dataclasses
import hashlib

import numpy as np

from ..geometry import PixelBox, rasterize_box, rle_encode
from .types import Detector, DetectorRequest, MultiMaskSegmenter


def tile_hash(tile: np.ndarray) -> str:
    """Content hash of an RGB tile; shared with the inference sidecar."""
    tile = np.ascontiguousarray(tile, dtype=np.uint8)
    h, w = tile.shape[:2]
    digest = hashlib.sha256()
    digest.update(f"{h}:{w}:".encode("ascii"))
    digest.update(tile.tobytes())
    return digest.hexdigest()


class MockDetector(Detector):
    """Returns canned boxes keyed by tile content hash.

    Fixture boxes keep their stored scores; the returned phrase is the
    request prompt. Boxes under the request's box_threshold are withheld,
    mirroring the real backend contract.
    """

    def __init__(self, fixtures: dict):
        self.fixtures = dict(fixtures)

    def detect(self, req: DetectorRequest) -> list:
        hits = self.fixtures.get(tile_hash(req.tile), [])
        return [
            dataclasses.replace(box, phrase=req.prompt)
            for box in hits
            if box.score >= req.box_threshold
        ]


def eroded_box_mask(box: PixelBox, h: int, w: int) -> np.ndarray:
    """The mock segmentation rule: box interior eroded by one pixel."""
    inner_x0, inner_y0 = box.x0 + 1.0, box.y0 + 1.0
    inner_x1, inner_y1 = box.x1 - 1.0, box.y1 - 1.0
    if inner_x1 <= inner_x0 or inner_y1 <= inner_y0:
        return np.zeros((h, w), dtype=bool)
    return rasterize_box(PixelBox(inner_x0, inner_y0, inner_x1, inner_y1), h, w)


class MockSegmenter(MultiMaskSegmenter):
    """Masks each box with its interior eroded by 1 px at confidence 0.9.

    With `multimask` set it also proposes a deeper erosion and the raw box
    at lower confidences, exercising the highest-confidence-wins rule.
    """

    PRIMARY_CONFIDENCE = 0.9

    def candidates(self, tile, box, multimask):
        h, w = tile.shape[:2]
        options = [(rle_encode(eroded_box_mask(box, h, w)), self.PRIMARY_CONFIDENCE)]
        if multimask:
            deeper = PixelBox(box.x0 + 1, box.y0 + 1, box.x1 - 1, box.y1 - 1) if (
                box.x1 - box.x0 > 2 and box.y1 - box.y0 > 2
            ) else box
            options.append((rle_encode(eroded_box_mask(deeper, h, w)), 0.6))
            options.append((rle_encode(rasterize_box(box, h, w)), 0.5))
        return options

"""Detector/segmenter backend contracts and error taxonomy."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geometry import MaskRLE, PixelBox, ScoredBox


class BackendError(Exception):
    """Base class for backend failures."""


class RetryableBackendError(BackendError):
    """Transient failure (service unavailable, timeout): safe to retry."""


class ProtocolError(BackendError):
    """Malformed response or wire-contract violation: fatal."""


class BackendInputError(BackendError):
    """The backend rejected the request as invalid: fatal."""


def _check_tile(tile: np.ndarray) -> np.ndarray:
    tile = np.asarray(tile)
    if tile.ndim != 3 or tile.shape[2] != 3 or tile.dtype != np.uint8:
        raise ValueError(f"tile must be (h, w, 3) uint8, got {tile.shape} {tile.dtype}")
    return tile


@dataclass(frozen=True)
class DetectorRequest:
    tile: np.ndarray
    prompt: str
    box_threshold: float
    text_threshold: float

    def __post_init__(self):
        object.__setattr__(self, "tile", _check_tile(self.tile))
        for name in ("box_threshold", "text_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class SegmentRequest:
    tile: np.ndarray
    boxes: tuple
    multimask: bool = False

    def __post_init__(self):
        tile = _check_tile(self.tile)
        h, w = tile.shape[:2]
        clamped = tuple(box.clamped(float(w), float(h)) for box in self.boxes)
        if not clamped:
            raise ValueError("segment request needs at least one box")
        object.__setattr__(self, "tile", tile)
        object.__setattr__(self, "boxes", clamped)


@dataclass(frozen=True)
class SegmentResult:
    """One (mask, confidence) pair per request box, order preserved."""

    masks: tuple
    scores: tuple

    def __post_init__(self):
        if len(self.masks) != len(self.scores):
            raise ValueError("masks and scores must pair up")
        for score in self.scores:
            if not 0.0 <= score <= 1.0:
                raise ValueError(f"confidence must be in [0, 1], got {score}")

    def __len__(self):
        return len(self.masks)


class Detector:
    """Text-prompted open-vocabulary box detector."""

    def detect(self, req: DetectorRequest) -> list:
        raise NotImplementedError


class Segmenter:
    """Box-prompted mask generator."""

    def segment(self, req: SegmentRequest) -> SegmentResult:
        raise NotImplementedError


class MultiMaskSegmenter(Segmenter):
    """Base for segmenters that propose candidate masks per box.

    Subclasses yield (mask, confidence) candidates; the highest-confidence
    candidate wins (first wins ties).
    """

    def candidates(self, tile: np.ndarray, box: PixelBox, multimask: bool) -> list:
        raise NotImplementedError

    def segment(self, req: SegmentRequest) -> SegmentResult:
        masks, scores = [], []
        for box in req.boxes:
            options = self.candidates(req.tile, box, req.multimask)
            if not options:
                raise ProtocolError("segmenter produced no candidates for a box")
            best = max(range(len(options)), key=lambda i: options[i][1])
            mask, score = options[best]
            masks.append(mask)
            scores.append(float(score))
        return SegmentResult(masks=tuple(masks), scores=tuple(scores))


__all__ = [
    "BackendError",
    "BackendInputError",
    "Detector",
    "DetectorRequest",
    "MaskRLE",
    "MultiMaskSegmenter",
    "ProtocolError",
    "RetryableBackendError",
    "ScoredBox",
    "SegmentRequest",
    "SegmentResult",
    "Segmenter",
]

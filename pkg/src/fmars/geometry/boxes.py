"""Axis-aligned boxes in pixel coordinates and box overlap arithmetic."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PixelBox:
    """Half-open box [x0, x1) x [y0, y1) in pixel coordinates."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError(f"degenerate box: {self}")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def aspect(self) -> float:
        """min(w, h) / max(w, h), in (0, 1]."""
        return min(self.width, self.height) / max(self.width, self.height)

    def contains_point(self, x: float, y: float) -> bool:
        return self.x0 <= x < self.x1 and self.y0 <= y < self.y1

    def intersects(self, other: "PixelBox") -> bool:
        return (
            self.x0 < other.x1
            and other.x0 < self.x1
            and self.y0 < other.y1
            and other.y0 < self.y1
        )

    def clamped(self, width: float, height: float) -> "PixelBox":
        """Clip to [0, width) x [0, height); raises if nothing remains."""
        return PixelBox(
            max(self.x0, 0.0),
            max(self.y0, 0.0),
            min(self.x1, width),
            min(self.y1, height),
        )

    def shifted(self, dx: float, dy: float) -> "PixelBox":
        return PixelBox(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy)


@dataclass(frozen=True)
class ScoredBox:
    """Detection box with confidence score and the text phrase it matched.

    `phrase` is empty for boxes that did not come from a text query
    (e.g. footprint-derived prompts).
    """

    box: PixelBox
    score: float
    phrase: str = ""

    def __post_init__(self):
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must be in [0, 1], got {self.score}")


def box_iou(a: PixelBox, b: PixelBox) -> float:
    """Intersection-over-union of two boxes, in [0, 1]."""
    ix = min(a.x1, b.x1) - max(a.x0, b.x0)
    iy = min(a.y1, b.y1) - max(a.y0, b.y0)
    if ix <= 0.0 or iy <= 0.0:
        return 0.0
    inter = ix * iy
    return inter / (a.area + b.area - inter)

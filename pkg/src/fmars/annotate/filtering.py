"""Candidate-box filter stack for text-prompted detections.

The stages run in a fixed, normative order: score threshold, greedy NMS,
aspect-ratio filter, metric-area filter. Order matters (NMS sees boxes the
later filters would remove), so it is part of the contract.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..geometry import box_iou


@dataclass(frozen=True)
class FilterConfig:
    box_threshold: float = 0.12
    text_threshold: float = 0.3
    nms_iou: float = 0.5
    min_aspect: float = 0.5  # "lower than 1:2": min(w,h)/max(w,h) below this is dropped
    max_area_m2: float = 7000.0

    def __post_init__(self):
        for name in ("box_threshold", "text_threshold", "nms_iou"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if not 0.0 < self.min_aspect <= 1.0:
            raise ValueError(f"min_aspect must be in (0, 1], got {self.min_aspect}")
        if not self.max_area_m2 > 0:
            raise ValueError(f"max_area_m2 must be positive, got {self.max_area_m2}")


def filter_boxes(boxes, cfg: FilterConfig, resolution_m: float) -> list:
    """Apply threshold, NMS, aspect and area filters; survivors come back
    in descending score order (ties keep input order)."""
    if not resolution_m > 0:
        raise ValueError(f"resolution_m must be positive, got {resolution_m}")

    scored = [b for b in boxes if b.score >= cfg.box_threshold]
    # greedy NMS: highest score first, input order breaks ties
    order = sorted(range(len(scored)), key=lambda i: (-scored[i].score, i))
    kept = []
    for i in order:
        candidate = scored[i]
        if all(box_iou(candidate.box, k.box) < cfg.nms_iou for k in kept):
            kept.append(candidate)

    survivors = []
    for b in kept:
        if b.box.aspect < cfg.min_aspect:
            continue
        if b.box.area * resolution_m * resolution_m > cfg.max_area_m2:
            continue
        survivors.append(b)
    return survivors

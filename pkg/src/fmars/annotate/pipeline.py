"""Tile orchestration: per-class annotation workflows over a raster.

Each class has its own prompt construction route (footprint AABBs for
buildings, text detections for high vegetation, buffered centerlines for
roads); segmentation masks are vectorized per prompt and merged across
tiles with duplicate suppression.
"""
from __future__ import annotations

import concurrent.futures
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..backends.types import BackendError, DetectorRequest, SegmentRequest
from ..geometry import (
    PixelBox,
    PolygonGeometry,
    pixel_to_world,
    polygonize_mask,
    rle_decode,
)
from ..ingest import FootprintSet, GeoRaster, RoadGraph
from .dedupe import dedupe_across_tiles
from .filtering import FilterConfig, filter_boxes
from .instances import PROVENANCE_FOOTPRINT, PROVENANCE_TEXT, InstanceAnnotation
from .labels import ClassLabel
from .prompts import ROAD_BUFFER_RADIUS_M, footprints_to_prompts, roads_to_instances

log = logging.getLogger("fmars.annotate")

DEFAULT_TILE_SIZE = 1024
DEFAULT_TILE_OVERLAP = 128
DEFAULT_PROMPTS = ("bushes",)
LEAKAGE_MARGIN_PX = 8.0


@dataclass(frozen=True)
class AnnotateConfig:
    filter: FilterConfig = field(default_factory=FilterConfig)
    prompts: tuple = DEFAULT_PROMPTS
    road_radius_m: float = ROAD_BUFFER_RADIUS_M
    tile_size: int = DEFAULT_TILE_SIZE
    tile_overlap: int = DEFAULT_TILE_OVERLAP
    multimask: bool = False
    min_area_px: float = 4.0
    simplify_tol_px: float = 0.5
    workers: int = 1

    def __post_init__(self):
        if self.tile_size <= 0 or not 0 <= self.tile_overlap < self.tile_size:
            raise ValueError(
                f"bad tiling: size={self.tile_size} overlap={self.tile_overlap}"
            )
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class AnnotationSources:
    footprints: FootprintSet | None = None
    roads: RoadGraph | None = None


def tile_grid(width: int, height: int, tile_size: int, overlap: int) -> list:
    """Sliding-window tile boxes covering the raster.

    Full-size tiles with the given overlap; the last tile per axis is
    shifted back so no pixels are missed. Rasters smaller than the tile
    size get a single raster-sized window.
    """

    def starts(extent):
        if extent <= tile_size:
            return [0]
        stride = tile_size - overlap
        positions = list(range(0, extent - tile_size + 1, stride))
        if positions[-1] + tile_size < extent:
            positions.append(extent - tile_size)
        return positions

    boxes = []
    for y in starts(height):
        for x in starts(width):
            boxes.append(
                PixelBox(x, y, min(x + tile_size, width), min(y + tile_size, height))
            )
    return boxes


def _segment_tile(raster, window, boxes, segmenter, label, provenance, tile_index, cfg):
    """Segment prompt boxes on one tile and vectorize the masks."""
    win = raster.read_window(window)
    request = SegmentRequest(win.pixels, tuple(boxes), multimask=cfg.multimask)
    result = segmenter.segment(request)
    shifted = raster.transform.shifted(window.x0, window.y0)
    instances = []
    for box, rle, score in zip(request.boxes, result.masks, result.scores):
        polys = polygonize_mask(rle_decode(rle), cfg.min_area_px, cfg.simplify_tol_px)
        if not polys:
            continue
        poly = max(polys, key=lambda p: p.area)  # one delineation per prompt
        minx, miny, maxx, maxy = poly.bounds()
        if (
            minx < box.x0 - LEAKAGE_MARGIN_PX
            or miny < box.y0 - LEAKAGE_MARGIN_PX
            or maxx > box.x1 + LEAKAGE_MARGIN_PX
            or maxy > box.y1 + LEAKAGE_MARGIN_PX
        ):
            log.warning(
                "tile %d: mask leaked more than %.0f px beyond its prompt box",
                tile_index,
                LEAKAGE_MARGIN_PX,
            )
        instances.append(
            InstanceAnnotation(
                geometry=poly.transformed(
                    lambda pts: pixel_to_world(shifted, pts), space="world"
                ),
                label=label,
                confidence=float(score),
                provenance=provenance,
                source_tile=tile_index,
            )
        )
    return instances


def _buildings_tile(raster, window, tile_index, sources, segmenter, cfg):
    boxes = footprints_to_prompts(sources.footprints, raster.transform, window)
    if not boxes:
        return []
    return _segment_tile(
        raster, window, boxes, segmenter, ClassLabel.BUILDINGS,
        PROVENANCE_FOOTPRINT, tile_index, cfg,
    )


def _vegetation_tile(raster, window, tile_index, detector, segmenter, cfg):
    win = raster.read_window(window)
    detections = []
    for prompt in cfg.prompts:
        detections.extend(
            detector.detect(
                DetectorRequest(
                    win.pixels, prompt, cfg.filter.box_threshold, cfg.filter.text_threshold
                )
            )
        )
    survivors = filter_boxes(detections, cfg.filter, raster.resolution_m)
    if not survivors:
        return []
    return _segment_tile(
        raster, window, [b.box for b in survivors], segmenter,
        ClassLabel.HIGH_VEGETATION, PROVENANCE_TEXT, tile_index, cfg,
    )


def instance_to_json(inst: InstanceAnnotation) -> dict:
    return {
        "exterior": np.asarray(inst.geometry.exterior).tolist(),
        "holes": [np.asarray(h).tolist() for h in inst.geometry.holes],
        "class_id": int(inst.label),
        "confidence": inst.confidence,
        "provenance": inst.provenance,
        "source_tile": inst.source_tile,
    }


def instance_from_json(payload: dict) -> InstanceAnnotation:
    return InstanceAnnotation(
        geometry=PolygonGeometry(
            exterior=payload["exterior"],
            holes=tuple(payload["holes"]),
            space="world",
        ),
        label=ClassLabel(payload["class_id"]),
        confidence=payload["confidence"],
        provenance=payload["provenance"],
        source_tile=payload["source_tile"],
    )


class Checkpoint:
    """Resumable per-class record of completed tiles and their instances.

    JSON layout: {class_name: {tile_index_str: [instance, ...]}}. A resumed
    run skips recorded tiles and reuses their instances verbatim.
    """

    def __init__(self, path):
        self.path = Path(path) if path else None
        self._tiles: dict = {}
        if self.path and self.path.exists():
            raw = json.loads(self.path.read_text())
            self._tiles = {
                class_name: {
                    int(index): [instance_from_json(i) for i in items]
                    for index, items in tiles.items()
                }
                for class_name, tiles in raw.items()
            }

    def completed(self, class_name: str) -> dict:
        return dict(self._tiles.get(class_name, {}))

    def record(self, class_name: str, per_tile: dict):
        self._tiles.setdefault(class_name, {}).update(per_tile)
        if self.path:
            payload = {
                cls: {
                    str(index): [instance_to_json(i) for i in items]
                    for index, items in tiles.items()
                }
                for cls, tiles in self._tiles.items()
            }
            self.path.write_text(json.dumps(payload))


def annotate_class(
    raster: GeoRaster,
    label: ClassLabel,
    sources: AnnotationSources,
    detector=None,
    segmenter=None,
    cfg: AnnotateConfig = AnnotateConfig(),
    checkpoint: Checkpoint | None = None,
    on_tile=None,
) -> list:
    """Run one class's annotation workflow over every tile.

    Returns deduplicated instances in tile order. If the backend fails
    after its retries, completed tiles are checkpointed and the error
    propagates; a rerun with the same checkpoint resumes where it stopped.
    `on_tile(index, instance_count, seconds)` is invoked per finished tile.
    """
    if label == ClassLabel.ROADS:
        if sources.roads is None:
            raise ValueError("roads annotation requires a road graph source")
        return roads_to_instances(sources.roads, cfg.road_radius_m)

    if label == ClassLabel.BUILDINGS:
        if sources.footprints is None:
            raise ValueError("buildings annotation requires a footprint source")
        if segmenter is None:
            raise ValueError("buildings annotation requires a segmenter")

        def work(window, index):
            return _buildings_tile(raster, window, index, sources, segmenter, cfg)

    elif label == ClassLabel.HIGH_VEGETATION:
        if detector is None or segmenter is None:
            raise ValueError("vegetation annotation requires detector and segmenter")
        if not cfg.prompts:
            raise ValueError("vegetation annotation requires at least one text prompt")

        def work(window, index):
            return _vegetation_tile(raster, window, index, detector, segmenter, cfg)

    else:
        raise ValueError(f"no annotation workflow for {label!r}")

    windows = tile_grid(raster.width, raster.height, cfg.tile_size, cfg.tile_overlap)
    class_name = label.name.lower()
    per_tile = checkpoint.completed(class_name) if checkpoint else {}
    pending = [i for i in range(len(windows)) if i not in per_tile]

    def timed(index):
        began = time.perf_counter()
        instances = work(windows[index], index)
        return instances, time.perf_counter() - began

    failure = None
    if cfg.workers == 1:
        for index in pending:
            try:
                per_tile[index], seconds = timed(index)
            except BackendError as exc:
                failure = exc
                break
            if on_tile:
                on_tile(index, len(per_tile[index]), seconds)
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            futures = {pool.submit(timed, i): i for i in pending}
            for future in concurrent.futures.as_completed(futures):
                index = futures[future]
                try:
                    per_tile[index], seconds = future.result()
                except BackendError as exc:
                    failure = failure or exc
                else:
                    if on_tile:
                        on_tile(index, len(per_tile[index]), seconds)

    if checkpoint:
        checkpoint.record(class_name, per_tile)
    if failure is not None:
        raise failure

    instances = []
    for index in sorted(per_tile):
        instances.extend(per_tile[index])
    return dedupe_across_tiles(instances)

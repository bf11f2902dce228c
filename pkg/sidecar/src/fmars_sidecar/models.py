"""Model registry: detector + segmenter handles behind a uniform surface.

Models are chosen by config (environment): "stub" selects the built-in
deterministic implementations, which need no weights or accelerator, so the
full protocol suite runs anywhere. Anything else is an import path
"module:factory" called with the device string; the factory returns an
object with the same duck-typed surface as the stubs.
"""
from __future__ import annotations

import hashlib
import importlib
import json
import math
import os
from pathlib import Path

import numpy as np

from .cache import EmbeddingCache

ENV_DETECTOR = "FMARS_SIDECAR_DETECTOR"
ENV_SEGMENTER = "FMARS_SIDECAR_SEGMENTER"
ENV_DEVICE = "FMARS_SIDECAR_DEVICE"
ENV_FIXTURES = "FMARS_SIDECAR_FIXTURES"
ENV_CACHE_SIZE = "FMARS_SIDECAR_CACHE_SIZE"

STUB = "stub"


def image_hash(image: np.ndarray) -> str:
    """Content hash shared with the pipeline client's mock backends."""
    image = np.ascontiguousarray(image, dtype=np.uint8)
    h, w = image.shape[:2]
    digest = hashlib.sha256()
    digest.update(f"{h}:{w}:".encode("ascii"))
    digest.update(image.tobytes())
    return digest.hexdigest()


def _box_pixel_span(lo: float, hi: float, limit: int) -> tuple:
    """Index range [start, stop) of pixels whose centers fall in [lo, hi)."""
    start = max(math.ceil(lo - 0.5), 0)
    stop = min(math.ceil(hi - 0.5), limit)
    return start, stop


def eroded_box_mask(box: dict, h: int, w: int) -> np.ndarray:
    """Stub segmentation rule: the box interior eroded by one pixel."""
    mask = np.zeros((h, w), dtype=bool)
    x0, y0, x1, y1 = box["x0"] + 1.0, box["y0"] + 1.0, box["x1"] - 1.0, box["y1"] - 1.0
    if x1 <= x0 or y1 <= y0:
        return mask
    c0, c1 = _box_pixel_span(x0, x1, w)
    r0, r1 = _box_pixel_span(y0, y1, h)
    if c0 < c1 and r0 < r1:
        mask[r0:r1, c0:c1] = True
    return mask


def box_mask(box: dict, h: int, w: int) -> np.ndarray:
    mask = np.zeros((h, w), dtype=bool)
    c0, c1 = _box_pixel_span(box["x0"], box["x1"], w)
    r0, r1 = _box_pixel_span(box["y0"], box["y1"], h)
    if c0 < c1 and r0 < r1:
        mask[r0:r1, c0:c1] = True
    return mask


class StubDetector:
    """Canned detections keyed by image content hash.

    The fixture file maps hash -> [{x0, y0, x1, y1, score, phrase?}, ...].
    Boxes under the request's box threshold are withheld; returned phrases
    echo the query, like a grounding model reporting its matched phrase.
    """

    name = "stub-detector"

    def __init__(self, fixtures_path=None):
        self.fixtures = {}
        if fixtures_path:
            self.fixtures = json.loads(Path(fixtures_path).read_text())

    def detect(self, image, prompt, box_threshold, text_threshold) -> list:
        hits = self.fixtures.get(image_hash(image), [])
        return [
            {
                "x0": float(b["x0"]),
                "y0": float(b["y0"]),
                "x1": float(b["x1"]),
                "y1": float(b["y1"]),
                "score": float(b["score"]),
                "phrase": prompt,
            }
            for b in hits
            if float(b["score"]) >= box_threshold
        ]


class StubSegmenter:
    """Deterministic promptable segmenter: erode-by-1 at confidence 0.9.

    `embed` stands in for the image encoder; candidates reuse the embedding
    so repeated tiles exercise the cache exactly like a real backbone. With
    multimask set, lower-confidence alternatives are proposed and the
    serving layer keeps the argmax.
    """

    name = "stub-segmenter"
    PRIMARY_CONFIDENCE = 0.9

    def embed(self, image: np.ndarray):
        return {"shape": image.shape[:2], "pixels": image}

    def candidates(self, embedding, box: dict, multimask: bool) -> list:
        h, w = embedding["shape"]
        options = [(eroded_box_mask(box, h, w), self.PRIMARY_CONFIDENCE)]
        if multimask:
            inner = {
                "x0": box["x0"] + 1,
                "y0": box["y0"] + 1,
                "x1": box["x1"] - 1,
                "y1": box["y1"] - 1,
            }
            deeper = inner if (box["x1"] - box["x0"] > 2 and box["y1"] - box["y0"] > 2) else box
            options.append((eroded_box_mask(deeper, h, w), 0.6))
            options.append((box_mask(box, h, w), 0.5))
        return options


def _resolve(spec: str, device: str):
    if spec == STUB:
        return None
    module_name, _, attr = spec.partition(":")
    if not attr:
        raise ValueError(f"model spec {spec!r} must look like module:factory")
    factory = getattr(importlib.import_module(module_name), attr)
    return factory(device)


class ModelRegistry:
    """Loaded model handles plus the shared embedding cache."""

    def __init__(
        self,
        detector_spec: str = STUB,
        segmenter_spec: str = STUB,
        device: str = "cpu",
        fixtures_path=None,
        cache_size: int = 16,
    ):
        self.detector_spec = detector_spec
        self.segmenter_spec = segmenter_spec
        self.device = device
        self.fixtures_path = fixtures_path
        self.cache = EmbeddingCache(cache_size)
        self.detector = None
        self.segmenter = None
        self.ready = False

    @classmethod
    def from_env(cls) -> "ModelRegistry":
        return cls(
            detector_spec=os.environ.get(ENV_DETECTOR, STUB),
            segmenter_spec=os.environ.get(ENV_SEGMENTER, STUB),
            device=os.environ.get(ENV_DEVICE, "cpu"),
            fixtures_path=os.environ.get(ENV_FIXTURES),
            cache_size=int(os.environ.get(ENV_CACHE_SIZE, "16")),
        )

    def load(self):
        """Instantiate models; any failure leaves the registry not ready."""
        self.detector = _resolve(self.detector_spec, self.device) or StubDetector(
            self.fixtures_path
        )
        self.segmenter = _resolve(self.segmenter_spec, self.device) or StubSegmenter()
        self.ready = True
        return self

    def model_names(self) -> list:
        return [
            getattr(self.detector, "name", self.detector_spec),
            getattr(self.segmenter, "name", self.segmenter_spec),
        ]

    def embedding_for(self, image: np.ndarray):
        return self.cache.get_or_compute(
            image_hash(image), lambda: self.segmenter.embed(image)
        )

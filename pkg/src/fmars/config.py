"""Pipeline configuration: JSON file with flat flag overrides.

Defaults equal the published operating point (box threshold 0.12, text
threshold 0.3, NMS 0.5, 1:2 aspect, 7000 m2 area cap, 5 m road buffer,
confidence cutoff 0.9), so every deviation has to be spelled out in the
config or on the command line.
"""
from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)

from .annotate import AnnotateConfig, FilterConfig
from .backends import MockDetector, MockSegmenter, RemoteBackend
from .geometry import PixelBox, ScoredBox

ENV_BACKEND_URL = "FMARS_BACKEND_URL"


@dataclass
class BackendConfig:
    mode: str = "mock"
    url: str | None = None
    detector_fixtures: str | None = None
    timeout_s: float = 120.0
    max_in_flight: int = 4

    def __post_init__(self):
        if self.mode not in ("mock", "remote"):
            raise ValueError(f"backend mode must be mock or remote, got {self.mode!r}")


@dataclass
class PipelineConfig:
    raster: str | None = None
    footprints: str | None = None
    roads: str | None = None
    output: str = "annotations.geojson"
    classes: tuple = ("roads", "high_vegetation", "buildings")
    filter: FilterConfig = field(default_factory=FilterConfig)
    backend: BackendConfig = field(default_factory=BackendConfig)
    road_buffer_radius_m: float = 5.0
    prompts: tuple = ("bushes",)
    tile_size: int = 1024
    tile_overlap: int = 128
    multimask: bool = False
    min_area_px: float = 4.0
    simplify_tol_px: float = 0.5
    seed: int = 0
    workers: int = field(default_factory=default_workers)
    checkpoint: str | None = None
    confidence_tau: float = 0.9
    dataset_tile_size: int = 512

    def annotate_config(self) -> AnnotateConfig:
        return AnnotateConfig(
            filter=self.filter,
            prompts=tuple(self.prompts),
            road_radius_m=self.road_buffer_radius_m,
            tile_size=self.tile_size,
            tile_overlap=self.tile_overlap,
            multimask=self.multimask,
            min_area_px=self.min_area_px,
            simplify_tol_px=self.simplify_tol_px,
            workers=self.workers,
        )

    def resolved(self) -> dict:
        payload = dataclasses.asdict(self)
        payload["classes"] = list(self.classes)
        payload["prompts"] = list(self.prompts)
        return payload


def _build(cls, payload: dict, context: str):
    known = {f.name: f for f in dataclasses.fields(cls)}
    unknown = set(payload) - set(known)
    if unknown:
        raise ValueError(f"unknown {context} keys: {', '.join(sorted(unknown))}")
    kwargs = {}
    for key, value in payload.items():
        if key == "filter":
            value = _build(FilterConfig, value, "filter")
        elif key == "backend":
            value = _build(BackendConfig, value, "backend")
        elif isinstance(value, list):
            value = tuple(value)
        kwargs[key] = value
    return cls(**kwargs)


def load_config(path) -> PipelineConfig:
    payload = json.loads(Path(path).read_text())
    if not isinstance(payload, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    return _build(PipelineConfig, payload, "config")


def apply_overrides(config: PipelineConfig, **overrides) -> PipelineConfig:
    """Flag overrides win over the config file; None means 'not given'."""
    backend_fields = {f.name for f in dataclasses.fields(BackendConfig)}
    for key, value in overrides.items():
        if value is None:
            continue
        if key == "backend_mode":
            config.backend.mode = value
        elif key in backend_fields:
            setattr(config.backend, key, value)
        elif hasattr(config, key):
            setattr(config, key, value)
        else:
            raise ValueError(f"unknown override {key!r}")
    return config


def load_detector_fixtures(path) -> dict:
    """Mock/stub detector fixture file: {tile_hash: [scored box, ...]}."""
    payload = json.loads(Path(path).read_text())
    fixtures = {}
    for tile_key, boxes in payload.items():
        fixtures[tile_key] = [
            ScoredBox(
                PixelBox(b["x0"], b["y0"], b["x1"], b["y1"]),
                float(b["score"]),
                str(b.get("phrase", "")),
            )
            for b in boxes
        ]
    return fixtures


def build_backends(config: BackendConfig):
    """Instantiate (detector, segmenter) from the backend section."""
    if config.mode == "mock":
        fixtures = (
            load_detector_fixtures(config.detector_fixtures)
            if config.detector_fixtures
            else {}
        )
        return MockDetector(fixtures), MockSegmenter()
    url = config.url or os.environ.get(ENV_BACKEND_URL)
    if not url:
        raise ValueError(
            f"remote backend needs a url (config, --url, or {ENV_BACKEND_URL})"
        )
    client = RemoteBackend(
        url, timeout_s=config.timeout_s, max_in_flight=config.max_in_flight
    )
    return client, client

"""JSON-lines tile manifest: one record per line, plus image header lines."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..geometry import PixelBox
from .tiling import TEST, TileRecord


@dataclass
class ImageInfo:
    event_id: str
    image_id: str
    width: int
    height: int
    resolution_m: float


@dataclass
class TileManifest:
    images: dict = field(default_factory=dict)  # image_id -> ImageInfo
    records: list = field(default_factory=list)

    def add_image(self, info: ImageInfo, records):
        if info.image_id in self.images:
            raise ValueError(f"duplicate image id {info.image_id!r}")
        self.images[info.image_id] = info
        self.records.extend(records)

    def test_images(self) -> dict:
        """event_id -> sorted list of image ids tagged test."""
        out: dict = {}
        for r in self.records:
            if r.split == TEST:
                out.setdefault(r.event_id, set()).add(r.image_id)
        return {event: sorted(ids) for event, ids in out.items()}

    def check_one_test_image_per_event(self):
        events = {r.event_id for r in self.records}
        test = self.test_images()
        complaints = []
        for event in sorted(events):
            n = len(test.get(event, []))
            if n != 1:
                complaints.append(f"{event}: {n} test images")
        if complaints:
            raise ValueError("split is invalid: " + "; ".join(complaints))


def write_manifest(manifest: TileManifest, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as handle:
        for info in manifest.images.values():
            handle.write(
                json.dumps(
                    {
                        "type": "image",
                        "event_id": info.event_id,
                        "image_id": info.image_id,
                        "width": info.width,
                        "height": info.height,
                        "resolution_m": info.resolution_m,
                    }
                )
                + "\n"
            )
        for r in manifest.records:
            handle.write(
                json.dumps(
                    {
                        "type": "tile",
                        "event_id": r.event_id,
                        "image_id": r.image_id,
                        "row": r.row,
                        "col": r.col,
                        "window": [r.window.x0, r.window.y0, r.window.x1, r.window.y1],
                        "histogram": list(r.histogram),
                        "entropy_bits": r.entropy_bits,
                        "split": r.split,
                    }
                )
                + "\n"
            )
    return path


def read_manifest(path) -> TileManifest:
    manifest = TileManifest()
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        payload = json.loads(line)
        kind = payload.pop("type")
        if kind == "image":
            info = ImageInfo(**payload)
            manifest.images[info.image_id] = info
        elif kind == "tile":
            manifest.records.append(
                TileRecord(
                    event_id=payload["event_id"],
                    image_id=payload["image_id"],
                    row=payload["row"],
                    col=payload["col"],
                    window=PixelBox(*payload["window"]),
                    histogram=tuple(payload["histogram"]),
                    entropy_bits=payload["entropy_bits"],
                    split=payload["split"],
                )
            )
        else:
            raise ValueError(f"unknown manifest line type {kind!r}")
    return manifest

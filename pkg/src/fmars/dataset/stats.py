"""Dataset-level statistics: instance counts and covered area."""
from __future__ import annotations

import json
from pathlib import Path

from ..annotate.labels import CLASS_NAMES, NAME_TO_CLASS, ClassLabel
from .manifest import TileManifest

COUNTED_CLASSES = (ClassLabel.ROADS, ClassLabel.HIGH_VEGETATION, ClassLabel.BUILDINGS)


def _count_instances(path) -> dict:
    doc = json.loads(Path(path).read_text())
    counts = {label: 0 for label in COUNTED_CLASSES}
    for feature in doc.get("features", []):
        props = feature.get("properties", {})
        label = None
        if "class_id" in props:
            label = ClassLabel(props["class_id"])
        elif "class" in props:
            label = NAME_TO_CLASS.get(props["class"])
        if label in counts:
            counts[label] += 1
    return counts


def dataset_stats(manifest: TileManifest, annotations: dict) -> dict:
    """Summarize a dataset build.

    `annotations` maps event_id to one or more annotation GeoJSON paths.
    Covered area per event is the sum over images of
    width * height * resolution_m^2 / 1e6 (square kilometers).
    """
    events: dict = {}
    for info in manifest.images.values():
        entry = events.setdefault(
            info.event_id,
            {"images": 0, "area_km2": 0.0, "instances": {}},
        )
        entry["images"] += 1
        entry["area_km2"] += info.width * info.height * info.resolution_m**2 / 1e6

    for event_id, paths in annotations.items():
        if isinstance(paths, (str, Path)):
            paths = [paths]
        entry = events.setdefault(
            event_id, {"images": 0, "area_km2": 0.0, "instances": {}}
        )
        totals = {label: 0 for label in COUNTED_CLASSES}
        for path in paths:
            for label, count in _count_instances(path).items():
                totals[label] += count
        entry["instances"] = {CLASS_NAMES[k]: v for k, v in totals.items()}

    grand = {
        "events": len(events),
        "images": sum(e["images"] for e in events.values()),
        "area_km2": round(sum(e["area_km2"] for e in events.values()), 6),
        "instances": {},
    }
    for name in (CLASS_NAMES[c] for c in COUNTED_CLASSES):
        grand["instances"][name] = sum(
            e["instances"].get(name, 0) for e in events.values()
        )
    for entry in events.values():
        entry["area_km2"] = round(entry["area_km2"], 6)
    return {"events": events, "totals": grand}


def format_stats_table(report: dict) -> str:
    """Aligned human-readable rendering of a stats report."""
    lines = []
    header = f"{'event':<24} {'images':>6} {'area_km2':>12} {'roads':>8} {'high_veg':>9} {'buildings':>10}"
    lines.append(header)
    lines.append("-" * len(header))
    for event_id in sorted(report["events"]):
        entry = report["events"][event_id]
        inst = entry.get("instances", {})
        lines.append(
            f"{event_id:<24} {entry['images']:>6} {entry['area_km2']:>12.4f} "
            f"{inst.get('roads', 0):>8} {inst.get('high_vegetation', 0):>9} "
            f"{inst.get('buildings', 0):>10}"
        )
    totals = report["totals"]
    lines.append("-" * len(header))
    lines.append(
        f"{'TOTAL':<24} {totals['images']:>6} {totals['area_km2']:>12.4f} "
        f"{totals['instances'].get('roads', 0):>8} "
        f"{totals['instances'].get('high_vegetation', 0):>9} "
        f"{totals['instances'].get('buildings', 0):>10}"
    )
    return "\n".join(lines)

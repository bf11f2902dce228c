"""Deterministic GeoJSON output for merged instance annotations."""
from __future__ import annotations

import json
from pathlib import Path

from .labels import CLASS_NAMES
from .instances import InstanceAnnotation

COORD_DECIMALS = 9


def _round(value: float) -> float:
    rounded = round(float(value), COORD_DECIMALS)
    return 0.0 if rounded == 0 else rounded


def _ring_coords(ring) -> list:
    return [[_round(x), _round(y)] for x, y in ring]


def instance_to_feature(inst: InstanceAnnotation) -> dict:
    rings = [_ring_coords(inst.geometry.exterior)]
    rings.extend(_ring_coords(h) for h in inst.geometry.holes)
    return {
        "type": "Feature",
        "geometry": {"type": "Polygon", "coordinates": rings},
        "properties": {
            "class": CLASS_NAMES[inst.label],
            "class_id": int(inst.label),
            "confidence": _round(inst.confidence),
            "provenance": inst.provenance,
        },
    }


def _feature_sort_key(feature: dict):
    coords = feature["geometry"]["coordinates"][0]
    xs = [p[0] for p in coords[:-1]]
    ys = [p[1] for p in coords[:-1]]
    centroid_x = sum(xs) / len(xs)
    centroid_y = sum(ys) / len(ys)
    return (
        feature["properties"]["class_id"],
        centroid_x,  # west-to-east
        centroid_y,
        tuple(map(tuple, coords)),
    )


def merge_and_write(instances, path) -> Path:
    """Merge instances of all classes into one GeoJSON FeatureCollection.

    Feature order is class_id ascending, then west-to-east by centroid,
    with full-coordinate tie-breaks, so the output is byte-identical for
    the same instance set regardless of input order.
    """
    features = sorted(
        (instance_to_feature(inst) for inst in instances), key=_feature_sort_key
    )
    collection = {"type": "FeatureCollection", "features": features}
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(collection, handle, separators=(",", ":"), allow_nan=False)
        handle.write("\n")
    return path

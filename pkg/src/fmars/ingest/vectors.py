"""GeoJSON readers for building footprints and road centerlines."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import shapely.geometry

from ..geometry import WORLD_SPACE, from_shapely


@dataclass
class FootprintSet:
    """Building footprint polygons in world coordinates.

    Invalid or non-polygon features are never silently accepted: they are
    skipped and counted in `skipped_invalid` / `skipped_non_polygon`.
    """

    features: list = field(default_factory=list)
    source_ids: list = field(default_factory=list)
    skipped_invalid: int = 0
    skipped_non_polygon: int = 0

    def __len__(self):
        return len(self.features)


@dataclass
class RoadGraph:
    """Road centerlines as polylines in world coordinates."""

    polylines: list = field(default_factory=list)
    skipped_non_line: int = 0

    def __len__(self):
        return len(self.polylines)


def _load_feature_collection(path) -> list:
    doc = json.loads(Path(path).read_text())
    if doc.get("type") != "FeatureCollection" or "features" not in doc:
        raise ValueError(f"{path}: not a GeoJSON FeatureCollection")
    return doc["features"]


def _feature_id(feature, index):
    if "id" in feature:
        return feature["id"]
    props = feature.get("properties") or {}
    return props.get("id", index)


def load_footprints(path, raster_extent) -> FootprintSet:
    """Load polygon footprints intersecting `raster_extent` (minx,miny,maxx,maxy).

    MultiPolygons are exploded into single polygons. Footprints straddling
    the extent are kept whole: prompt boxes need the full outline.
    """
    extent = shapely.geometry.box(*raster_extent)
    out = FootprintSet()
    for index, feature in enumerate(_load_feature_collection(path)):
        geometry = feature.get("geometry") or {}
        gtype = geometry.get("type")
        if gtype == "Polygon":
            parts = [geometry.get("coordinates")]
        elif gtype == "MultiPolygon":
            parts = geometry.get("coordinates", [])
        else:
            out.skipped_non_polygon += 1
            continue
        for rings in parts:
            try:
                shell, holes = rings[0], rings[1:]
                geom = shapely.geometry.Polygon(shell, holes)
                if not geom.is_valid or geom.is_empty:
                    raise ValueError("invalid polygon")
                poly = from_shapely(geom, WORLD_SPACE)
            except (ValueError, IndexError, TypeError):
                out.skipped_invalid += 1
                continue
            if geom.intersects(extent):
                out.features.append(poly)
                out.source_ids.append(_feature_id(feature, index))
    return out


def load_roads(path, raster_extent) -> RoadGraph:
    """Load road polylines clipped to `raster_extent`.

    Lines crossing the extent boundary are cut at the boundary (buffering
    is local, so clipping loses nothing). Zero-length pieces are dropped.
    """
    extent = shapely.geometry.box(*raster_extent)
    out = RoadGraph()
    for feature in _load_feature_collection(path):
        geometry = feature.get("geometry") or {}
        gtype = geometry.get("type")
        if gtype == "LineString":
            parts = [geometry.get("coordinates")]
        elif gtype == "MultiLineString":
            parts = geometry.get("coordinates", [])
        else:
            out.skipped_non_line += 1
            continue
        for coords in parts:
            if not coords or len(coords) < 2:
                out.skipped_non_line += 1
                continue
            clipped = shapely.geometry.LineString(coords).intersection(extent)
            for line in _explode_lines(clipped):
                pts = _dedupe_consecutive(np.asarray(line.coords, dtype=float))
                if len(pts) >= 2:
                    out.polylines.append(pts)
    return out


def _explode_lines(geom) -> list:
    if geom.is_empty:
        return []
    if geom.geom_type == "LineString":
        return [geom]
    if geom.geom_type in ("MultiLineString", "GeometryCollection"):
        lines = []
        for part in geom.geoms:
            lines.extend(_explode_lines(part))
        return lines
    return []  # points and polygons cannot be buffered as roads


def _dedupe_consecutive(pts: np.ndarray) -> np.ndarray:
    if len(pts) < 2:
        return pts
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(np.diff(pts, axis=0) != 0.0, axis=1)
    return pts[keep]


def footprint_polygons(fp: FootprintSet) -> list:
    """Convenience accessor returning the PolygonGeometry list."""
    return list(fp.features)


__all__ = [
    "FootprintSet",
    "RoadGraph",
    "footprint_polygons",
    "load_footprints",
    "load_roads",
]

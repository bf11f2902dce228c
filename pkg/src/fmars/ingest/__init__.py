"""Raster and vector data ingestion."""

from .rasters import (
    FIXTURE_SUFFIX,
    FixtureRaster,
    GeoRaster,
    GeoTiffRaster,
    Window,
    open_raster,
    write_fixture_raster,
)
from .vectors import FootprintSet, RoadGraph, load_footprints, load_roads

__all__ = [
    "FIXTURE_SUFFIX",
    "FixtureRaster",
    "FootprintSet",
    "GeoRaster",
    "GeoTiffRaster",
    "RoadGraph",
    "Window",
    "load_footprints",
    "load_roads",
    "open_raster",
    "write_fixture_raster",
]

"""Windowed readers for georeferenced RGB rasters.

Two on-disk formats are supported: GeoTIFF (for real data, decoded
segment-by-segment so large images are never loaded whole) and a minimal
fixture format used by the test suite and demos: a JSON header next to a
raw row-major uint8 RGB file.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..geometry import AffineTransform, PixelBox, pixel_to_world

FIXTURE_SUFFIX = ".raster.json"


@dataclass(frozen=True)
class Window:
    """Pixels for a requested window, zero-filled where out of bounds."""

    pixels: np.ndarray
    box: PixelBox
    out_of_bounds: bool


class GeoRaster:
    """Base class: lazily windowed access to an RGB raster."""

    width: int
    height: int
    bands: int = 3
    transform: AffineTransform

    @property
    def resolution_m(self) -> float:
        return self.transform.resolution_m

    def read_window(self, box: PixelBox) -> Window:
        """Read a pixel window; the result always has the requested shape."""
        x0, y0 = int(box.x0), int(box.y0)
        x1, y1 = int(box.x1), int(box.y1)
        if (x0, y0, x1, y1) != (box.x0, box.y0, box.x1, box.y1):
            raise ValueError(f"window coordinates must be integers: {box}")
        out = np.zeros((y1 - y0, x1 - x0, 3), dtype=np.uint8)
        ix0, iy0 = max(x0, 0), max(y0, 0)
        ix1, iy1 = min(x1, self.width), min(y1, self.height)
        oob = (ix0, iy0, ix1, iy1) != (x0, y0, x1, y1)
        if ix0 < ix1 and iy0 < iy1:
            data = self._read(ix0, iy0, ix1, iy1)
            out[iy0 - y0 : iy1 - y0, ix0 - x0 : ix1 - x0] = data
        return Window(pixels=out, box=box, out_of_bounds=oob)

    def world_extent(self) -> tuple:
        """(minx, miny, maxx, maxy) of the raster footprint in world coords."""
        corners = np.array(
            [(0, 0), (self.width, 0), (self.width, self.height), (0, self.height)],
            dtype=float,
        )
        world = pixel_to_world(self.transform, corners)
        return (
            float(world[:, 0].min()),
            float(world[:, 1].min()),
            float(world[:, 0].max()),
            float(world[:, 1].max()),
        )

    def _read(self, x0: int, y0: int, x1: int, y1: int) -> np.ndarray:
        raise NotImplementedError


class FixtureRaster(GeoRaster):
    """Raster backed by the internal fixture format (JSON header + raw RGB)."""

    def __init__(self, header_path):
        header_path = Path(header_path)
        header = json.loads(header_path.read_text())
        self.width = int(header["width"])
        self.height = int(header["height"])
        if self.width * self.height <= 0:
            raise ValueError("raster has zero pixels")
        coeffs = header["transform"]
        self.transform = AffineTransform(*coeffs, resolution_m=header["resolution_m"])
        data_path = header_path.parent / header["data"]
        expected = self.height * self.width * 3
        if data_path.stat().st_size != expected:
            raise ValueError(
                f"{data_path} has {data_path.stat().st_size} bytes, expected {expected}"
            )
        self._data = np.memmap(data_path, dtype=np.uint8, mode="r").reshape(
            self.height, self.width, 3
        )

    def _read(self, x0, y0, x1, y1):
        return np.asarray(self._data[y0:y1, x0:x1])


def write_fixture_raster(header_path, pixels: np.ndarray, transform: AffineTransform):
    """Write the fixture pair (header JSON + raw RGB) for tests and demos."""
    header_path = Path(header_path)
    if not header_path.name.endswith(FIXTURE_SUFFIX):
        raise ValueError(f"fixture header must end with {FIXTURE_SUFFIX!r}")
    pixels = np.ascontiguousarray(pixels, dtype=np.uint8)
    if pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ValueError(f"expected (h, w, 3) RGB pixels, got {pixels.shape}")
    data_name = header_path.name[: -len(FIXTURE_SUFFIX)] + ".rgb"
    (header_path.parent / data_name).write_bytes(pixels.tobytes())
    header = {
        "width": pixels.shape[1],
        "height": pixels.shape[0],
        "transform": [
            transform.a,
            transform.b,
            transform.c,
            transform.d,
            transform.e,
            transform.f,
        ],
        "resolution_m": transform.resolution_m,
        "data": data_name,
    }
    header_path.write_text(json.dumps(header, indent=2))
    return header_path


class GeoTiffRaster(GeoRaster):
    """GeoTIFF reader decoding only the strips/tiles a window touches."""

    def __init__(self, path, resolution_m: float | None = None):
        import tifffile

        self._tif = tifffile.TiffFile(path)
        page = self._tif.pages[0]
        if (
            page.dtype != np.uint8
            or page.samplesperpixel != 3
            or len(page.shape) != 3
            or page.shape[2] != 3
        ):
            raise ValueError(
                f"{path}: unsupported band layout {page.shape} {page.dtype}, need uint8 RGB"
            )
        self._page = page
        self.height, self.width = page.shape[:2]
        self.transform = _geotiff_transform(self._tif, resolution_m)
        self._chunk_h, self._chunk_w = page.chunks[:2]
        self._grid_w = page.chunked[1]
        self._lock = threading.Lock()

    def _read(self, x0, y0, x1, y1):
        out = np.empty((y1 - y0, x1 - x0, 3), dtype=np.uint8)
        page, ch, cw = self._page, self._chunk_h, self._chunk_w
        for tile_r in range(y0 // ch, (y1 - 1) // ch + 1):
            for tile_c in range(x0 // cw, (x1 - 1) // cw + 1):
                index = tile_r * self._grid_w + tile_c
                with self._lock:
                    fh = self._tif.filehandle
                    fh.seek(page.dataoffsets[index])
                    raw = fh.read(page.databytecounts[index])
                    segment = page.decode(raw, index)[0]
                tile = segment.reshape(segment.shape[-3:])
                ty, tx = tile_r * ch, tile_c * cw
                sy0, sy1 = max(y0, ty), min(y1, ty + tile.shape[0])
                sx0, sx1 = max(x0, tx), min(x1, tx + tile.shape[1])
                out[sy0 - y0 : sy1 - y0, sx0 - x0 : sx1 - x0] = tile[
                    sy0 - ty : sy1 - ty, sx0 - tx : sx1 - tx
                ]
        return out


def _geotiff_transform(tif, resolution_m: float | None) -> AffineTransform:
    meta = tif.geotiff_metadata if tif.is_geotiff else None
    if not meta:
        raise ValueError("GeoTIFF is missing georeferencing tags")
    if "ModelTransformation" in meta:
        m = np.asarray(meta["ModelTransformation"], dtype=float).reshape(4, 4)
        a, b, c = m[0, 0], m[0, 1], m[0, 3]
        d, e, f = m[1, 0], m[1, 1], m[1, 3]
    elif "ModelPixelScale" in meta and "ModelTiepoint" in meta:
        sx, sy = meta["ModelPixelScale"][:2]
        i, j, _, x, y, _ = meta["ModelTiepoint"][:6]
        a, b, c = sx, 0.0, x - i * sx
        d, e, f = 0.0, -sy, y + j * sy
    else:
        raise ValueError("GeoTIFF is missing georeferencing tags")
    if int(meta.get("GTRasterTypeGeoKey", 1)) == 2:  # PixelIsPoint
        c -= 0.5 * a + 0.5 * b
        f -= 0.5 * d + 0.5 * e
    if resolution_m is None:
        model = int(meta.get("GTModelTypeGeoKey", 0))
        if model != 1:
            raise ValueError(
                "raster CRS is not projected in meters; pass resolution_m explicitly"
            )
        resolution_m = float(abs(a))
    return AffineTransform(a, b, c, d, e, f, resolution_m=resolution_m)


def open_raster(path, resolution_m: float | None = None) -> GeoRaster:
    """Open a GeoTIFF or fixture raster for lazy windowed reads."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    if path.name.endswith(FIXTURE_SUFFIX):
        return FixtureRaster(path)
    if path.suffix.lower() in (".tif", ".tiff"):
        return GeoTiffRaster(path, resolution_m=resolution_m)
    raise ValueError(f"unrecognized raster format: {path.name}")

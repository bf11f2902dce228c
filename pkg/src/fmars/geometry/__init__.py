"""Geometry and raster primitives: transforms, boxes, masks, polygons."""

from .affine import AffineTransform, identity_transform, pixel_to_world, world_to_pixel
from .boxes import PixelBox, ScoredBox, box_iou
from .buffering import buffer_polyline
from .polygons import PIXEL_SPACE, WORLD_SPACE, PolygonGeometry, from_shapely, ring_signed_area
from .rasterize import rasterize_box, rasterize_polygon
from .rle import MaskRLE, rle_decode, rle_encode
from .vectorize import polygonize_mask

__all__ = [
    "AffineTransform",
    "MaskRLE",
    "PIXEL_SPACE",
    "PixelBox",
    "PolygonGeometry",
    "ScoredBox",
    "WORLD_SPACE",
    "box_iou",
    "buffer_polyline",
    "from_shapely",
    "identity_transform",
    "pixel_to_world",
    "polygonize_mask",
    "rasterize_box",
    "rasterize_polygon",
    "ring_signed_area",
    "rle_decode",
    "rle_encode",
    "world_to_pixel",
]

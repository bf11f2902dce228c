"""Dataset assembly: tiling, entropy weighting, sampling, splits, stats."""

from .entropy import label_entropy
from .manifest import ImageInfo, TileManifest, read_manifest, write_manifest
from .sampling import sample_tiles
from .splits import select_test_images
from .stats import dataset_stats, format_stats_table
from .tiling import DATASET_TILE_SIZE, NUM_CLASSES, TEST, TRAIN, TileRecord, tile_image

__all__ = [
    "DATASET_TILE_SIZE",
    "ImageInfo",
    "NUM_CLASSES",
    "TEST",
    "TRAIN",
    "TileManifest",
    "TileRecord",
    "dataset_stats",
    "format_stats_table",
    "label_entropy",
    "read_manifest",
    "sample_tiles",
    "select_test_images",
    "tile_image",
    "write_manifest",
]

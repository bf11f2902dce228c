"""Non-overlapping label tiling with per-tile class statistics."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..geometry import PixelBox
from .entropy import label_entropy

DATASET_TILE_SIZE = 512
NUM_CLASSES = 4

TRAIN = "train"
TEST = "test"


@dataclass(frozen=True)
class TileRecord:
    event_id: str
    image_id: str
    row: int
    col: int
    window: PixelBox
    histogram: tuple
    entropy_bits: float
    split: str = TRAIN

    def __post_init__(self):
        if self.split not in (TRAIN, TEST):
            raise ValueError(f"split must be train or test, got {self.split!r}")
        expected = int(self.window.area)
        if sum(self.histogram) != expected:
            raise ValueError(
                f"histogram sums to {sum(self.histogram)}, window has {expected} px"
            )

    def with_split(self, split: str) -> "TileRecord":
        return replace(self, split=split)


def tile_image(
    labels: np.ndarray,
    event_id: str,
    image_id: str,
    size: int = DATASET_TILE_SIZE,
    num_classes: int = NUM_CLASSES,
    raster=None,
) -> list:
    """Cut a label grid into non-overlapping size x size tiles.

    Partial edge tiles are dropped. Histograms count every pixel including
    background; entropy is recomputable from the histogram. If `raster` is
    given, the label grid must align with it exactly.
    """
    labels = np.asarray(labels)
    if labels.ndim != 2:
        raise ValueError(f"label grid must be 2-D, got shape {labels.shape}")
    if raster is not None and (raster.height, raster.width) != labels.shape:
        raise ValueError(
            f"label grid {labels.shape} is misaligned with raster "
            f"{(raster.height, raster.width)}"
        )
    if labels.size and int(labels.max()) >= num_classes:
        raise ValueError(
            f"label grid contains class {int(labels.max())}, expected < {num_classes}"
        )
    records = []
    for row in range(labels.shape[0] // size):
        for col in range(labels.shape[1] // size):
            window = labels[row * size : (row + 1) * size, col * size : (col + 1) * size]
            hist = np.bincount(window.reshape(-1), minlength=num_classes)
            histogram = tuple(int(c) for c in hist)
            records.append(
                TileRecord(
                    event_id=event_id,
                    image_id=image_id,
                    row=row,
                    col=col,
                    window=PixelBox(
                        col * size, row * size, (col + 1) * size, (row + 1) * size
                    ),
                    histogram=histogram,
                    entropy_bits=label_entropy(histogram),
                )
            )
    return records

"""
Dataset tiling and entropy-weighted sampling
============================================

Cuts label grids into 512x512 tiles, weighs them by the Shannon entropy of
their class histograms, samples training tiles proportionally, and picks
each event's test image by average information content.
"""

import collections

import numpy as np

from fmars.dataset import (
    label_entropy,
    sample_tiles,
    select_test_images,
    tile_image,
)

rng = np.random.default_rng(7)

# %%
# Two images for one event: one busy (mixed classes), one mostly empty.
busy = np.zeros((2048, 2048), dtype=np.uint8)
busy[:, :700] = 3
busy[800:1400, :] = 1
busy[:300, 1500:] = 2
quiet = np.zeros((2048, 2048), dtype=np.uint8)
quiet[:64, :64] = 3
quiet[600:720, 600:900] = 1
quiet[1500:1560, 200:360] = 2
quiet[1100:1160, 1700:1900] = 3

records = tile_image(busy, "cyclone", "img_busy") + tile_image(
    quiet, "cyclone", "img_quiet"
)
print("tiles:", len(records), "(16 per image)")

# %%
# Entropy in bits: 0 for single-class tiles, 1 for a 50/50 split.
print("pure background:", label_entropy((262144, 0, 0, 0)))
print("50/50 split:    ", round(label_entropy((131072, 0, 0, 131072)), 3))
by_image = collections.defaultdict(list)
for r in records:
    by_image[r.image_id].append(r.entropy_bits)
for image_id, values in by_image.items():
    print(f"{image_id}: mean tile entropy {np.mean(values):.3f} bits")

# %%
# The busier image becomes the event's test image; the rest stay train.
records = select_test_images(records)
splits = collections.Counter((r.image_id, r.split) for r in records)
print("split assignment:", dict(splits))

# %%
# Sampling draws training tiles with probability proportional to entropy;
# zero-entropy tiles are never drawn. Same seed, same sequence.
draws = sample_tiles(records, n=5000, seed=42)
freq = collections.Counter((d.row, d.col) for d in draws)
print("distinct tiles drawn:", len(freq))
top = freq.most_common(3)
print("most sampled tiles:", top)
weights = {(r.row, r.col): r.entropy_bits for r in records if r.split == "train"}
total = sum(weights.values())
for key, count in top:
    print(
        f"tile {key}: empirical {count / 5000:.3f} vs expected {weights[key] / total:.3f}"
    )
assert [d.row for d in sample_tiles(records, 20, seed=1)] == [
    d.row for d in sample_tiles(records, 20, seed=1)
]

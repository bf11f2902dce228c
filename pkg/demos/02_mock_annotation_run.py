"""
Mock annotation run
===================

End-to-end annotation over a synthetic scene with the deterministic mock
backends: building footprints become box prompts, the road centerline is
buffered, canned "detections" stand in for the text-prompted detector, and
everything lands in one merged GeoJSON plus a semantic label grid.
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from fmars.annotate import (
    AnnotateConfig,
    AnnotationSources,
    ClassLabel,
    annotate_class,
    merge_and_write,
    render_semantic,
)
from fmars.backends import MockDetector, MockSegmenter, tile_hash
from fmars.geometry import PixelBox, ScoredBox
from fmars.ingest import load_footprints, load_roads, open_raster, write_fixture_raster
from fmars.synthetic import (
    feature_collection,
    gradient_image,
    linestring_feature,
    north_up_transform,
    polygon_feature,
    square_ring,
)

out_dir = Path(tempfile.mkdtemp(prefix="fmars_demo_"))
print("writing scene to", out_dir)

# %%
# Scene: a 1024x1024 raster at 0.3 m/px, three square footprints, one road.
transform = north_up_transform(430000.0, 4580000.0, 0.3)
raster_path = write_fixture_raster(
    out_dir / "scene.raster.json", gradient_image(1024, 1024), transform
)
(out_dir / "footprints.geojson").write_text(
    json.dumps(
        feature_collection(
            [
                polygon_feature(square_ring(430050.0, 4579950.0, 12.0)),
                polygon_feature(square_ring(430150.0, 4579900.0, 15.0)),
                polygon_feature(square_ring(430250.0, 4579820.0, 9.0)),
            ]
        )
    )
)
(out_dir / "roads.geojson").write_text(
    json.dumps(
        feature_collection(
            [linestring_feature([(430020.0, 4579980.0), (430220.0, 4579980.0)])]
        )
    )
)

raster = open_raster(raster_path)
extent = raster.world_extent()
sources = AnnotationSources(
    footprints=load_footprints(out_dir / "footprints.geojson", extent),
    roads=load_roads(out_dir / "roads.geojson", extent),
)
print("footprints:", len(sources.footprints), "roads:", len(sources.roads))

# %%
# The mock detector is keyed by tile content hash; these two boxes play the
# role of text-prompted vegetation detections on the (single) tile.
tile_pixels = raster.read_window(PixelBox(0, 0, 1024, 1024)).pixels
detector = MockDetector(
    {
        tile_hash(tile_pixels): [
            ScoredBox(PixelBox(830, 100, 890, 170), 0.8),
            ScoredBox(PixelBox(700, 300, 760, 350), 0.45),
        ]
    }
)
segmenter = MockSegmenter()

# %%
# Run the three per-class workflows and merge the results.
cfg = AnnotateConfig(prompts=("bushes",))
instances = []
for label in (ClassLabel.ROADS, ClassLabel.HIGH_VEGETATION, ClassLabel.BUILDINGS):
    found = annotate_class(
        raster, label, sources, detector=detector, segmenter=segmenter, cfg=cfg
    )
    print(f"{label.name.lower():>15}: {len(found)} instances")
    instances.extend(found)

geojson_path = merge_and_write(instances, out_dir / "annotations.geojson")
print("merged annotations ->", geojson_path)

# %%
# Semantic rendering paints instances with buildings > roads > vegetation.
grid = render_semantic(instances, PixelBox(0, 0, 1024, 1024), transform)
counts = {ClassLabel(v).name.lower(): int(c) for v, c in zip(*np.unique(grid, return_counts=True))}
print("semantic pixel counts:", counts)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.figure(figsize=(6, 6))
    plt.imshow(grid, cmap="tab10", vmin=0, vmax=9, interpolation="nearest")
    plt.title("semantic labels (mock run)")
    plt.colorbar(ticks=[0, 1, 2, 3])
    plt.savefig(out_dir / "semantic.png", dpi=120, bbox_inches="tight")
    print("semantic preview ->", out_dir / "semantic.png")
except ImportError:
    pass

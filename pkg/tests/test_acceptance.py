"""Acceptance gate: one test per criterion, each printing a pass/fail line
and enforcing its runtime budget. Mock backends only."""
import contextlib
import json
import math
import time
from pathlib import Path

import numpy as np
import pytest
import scipy.ndimage
import scipy.stats

import e2e_scene
from reference_impls import brute_force_filter
from fmars.annotate import FilterConfig, filter_boxes, polygon_iou
from fmars.cli import main
from fmars.dataset import TileRecord, sample_tiles, tile_image
from fmars.evaluation import table_mean, threshold_softmax
from fmars.geometry import (
    PixelBox,
    PolygonGeometry,
    ScoredBox,
    box_iou,
    buffer_polyline,
    polygonize_mask,
    rasterize_polygon,
    rle_decode,
    rle_encode,
)

GOLDEN = Path(__file__).parent / "fixtures" / "golden_annotations.geojson"


@contextlib.contextmanager
def criterion(name: str, budget_s: float):
    began = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"FAIL: {name}")
        raise
    elapsed = time.perf_counter() - began
    if elapsed > budget_s:
        print(f"FAIL: {name} (took {elapsed:.2f}s, budget {budget_s:.0f}s)")
        raise AssertionError(f"{name}: runtime {elapsed:.2f}s exceeds {budget_s}s")
    print(f"PASS: {name} ({elapsed:.2f}s)")


def test_metric_aggregation_fixture():
    with criterion("metric aggregation reproduces reported table values", 1.0):
        # recorded reference row: per-class values and printed aggregates
        assert table_mean([44.79, 55.94, 64.45, 82.47]) == "61.91"
        assert table_mean([42.47, 29.89, 10.56, 21.33]) == "26.06"
        # second reference table, all four rows
        assert table_mean([71.34, 68.72, 69.37, 59.47]) == "67.23"
        assert table_mean([41.16, 47.03, 58.54, 54.14]) == "50.22"
        # baseline row: its own class accuracies average to 26.425 -> 26.43;
        # the originally printed 26.44 is not derivable from the class values
        # (same nature as the known 33.07-vs-29.01 outlier, which is excluded)
        assert table_mean([97.40, 0.06, 8.24, 0.00]) == "26.43"
        assert table_mean([27.90, 0.06, 7.68, 0.00]) == "8.91"
        assert table_mean([76.59, 44.84, 51.78, 63.54]) == "59.19"
        assert table_mean([36.21, 40.15, 48.52, 56.41]) == "45.32"
        assert table_mean([70.56, 65.97, 56.57, 69.10]) == "65.55"
        assert table_mean([38.02, 54.77, 52.64, 60.20]) == "51.41"


def test_filter_oracle():
    with criterion("box filter matches brute-force reference on 1000 sets", 10.0):
        cfg = FilterConfig()
        rng = np.random.default_rng(101)
        for _ in range(1000):
            boxes = []
            for _ in range(int(rng.integers(0, 40))):
                x, y = rng.uniform(0, 200, size=2)
                w, h = rng.uniform(1, 120, size=2)
                boxes.append(
                    ScoredBox(
                        PixelBox(x, y, x + w, y + h),
                        float(rng.integers(0, 101)) / 100.0,
                    )
                )
            resolution = float(rng.uniform(0.1, 2.0))
            assert filter_boxes(boxes, cfg, resolution) == brute_force_filter(
                boxes, cfg, resolution
            )
        # boundary cases: aspect exactly 1:2 kept, area exactly 7000 m2 kept
        aspect_edge = [ScoredBox(PixelBox(0, 0, 50, 100), 0.9)]
        assert len(filter_boxes(aspect_edge, cfg, 0.1)) == 1
        area_edge = [ScoredBox(PixelBox(0, 0, 70, 100), 0.9)]
        assert len(filter_boxes(area_edge, cfg, 1.0)) == 1
        area_over = [ScoredBox(PixelBox(0, 0, 70, 100.0001), 0.9)]
        assert filter_boxes(area_over, cfg, 1.0) == []


def test_mock_end_to_end_golden_run(tmp_path):
    with criterion("mock end-to-end golden run (workers 1 and 4)", 30.0):
        outputs = {}
        for workers in (1, 4):
            workdir = tmp_path / f"workers{workers}"
            workdir.mkdir()
            config_path = e2e_scene.write_cli_inputs(workdir, workers=workers)
            assert main(["annotate", "--config", str(config_path)]) == 0
            outputs[workers] = (workdir / "annotations.geojson").read_bytes()
        assert outputs[1] == GOLDEN.read_bytes()
        assert outputs[4] == GOLDEN.read_bytes()

        doc = json.loads(outputs[1])
        by_class = {}
        for feature in doc["features"]:
            by_class.setdefault(feature["properties"]["class"], []).append(feature)
        assert len(by_class["buildings"]) == 3
        for rect in e2e_scene.expected_building_rects():
            expected = PolygonGeometry(rect, space="world")
            best = max(
                polygon_iou(
                    expected,
                    PolygonGeometry(f["geometry"]["coordinates"][0], space="world"),
                )
                for f in by_class["buildings"]
            )
            assert best >= 0.99
        road = PolygonGeometry(
            by_class["roads"][0]["geometry"]["coordinates"][0], space="world"
        )
        assert abs(road.area - e2e_scene.ROAD_CAPSULE_AREA) <= (
            0.01 * e2e_scene.ROAD_CAPSULE_AREA
        )


def test_entropy_sampler():
    with criterion("entropy-weighted sampler frequencies and chi-square", 5.0):
        def record(name, entropy):
            return TileRecord(
                event_id="e",
                image_id=name,
                row=0,
                col=0,
                window=PixelBox(0, 0, 512, 512),
                histogram=(512 * 512, 0, 0, 0),
                entropy_bits=entropy,
            )

        tiles = [record("a", 2.0), record("b", 1.0), record("c", 0.0)]
        names = [t.image_id for t in sample_tiles(tiles, 30000, seed=7)]
        freq = {k: names.count(k) / 30000 for k in ("a", "b", "c")}
        assert abs(freq["a"] - 2 / 3) <= 0.02
        assert abs(freq["b"] - 1 / 3) <= 0.02
        assert freq["c"] == 0.0
        chi = scipy.stats.chisquare(
            [names.count("a"), names.count("b")], [20000, 10000]
        )
        assert chi.pvalue > 0.01


def test_geometry_suite():
    with criterion("geometry suite: RLE, vectorize roundtrip, buffer, IoU", 30.0):
        rng = np.random.default_rng(202)
        for _ in range(1000):
            h, w = rng.integers(1, 20, size=2)
            mask = rng.random((h, w)) < rng.uniform(0, 1)
            assert np.array_equal(rle_decode(rle_encode(mask)), mask)

        blobs = 0
        while blobs < 25:
            smooth = scipy.ndimage.gaussian_filter(rng.random((64, 64)), sigma=4)
            mask = smooth > np.quantile(smooth, 0.75)
            labels, n = scipy.ndimage.label(mask)
            if n == 0:
                continue
            sizes = scipy.ndimage.sum_labels(mask, labels, index=range(1, n + 1))
            blob = labels == (int(np.argmax(sizes)) + 1)
            if blob.sum() < 100:
                continue
            blobs += 1
            polys = polygonize_mask(blob)
            rebuilt = np.zeros_like(blob)
            for poly in polys:
                rebuilt |= rasterize_polygon(poly, *blob.shape)
            iou = (rebuilt & blob).sum() / (rebuilt | blob).sum()
            assert iou >= 0.98

        for _ in range(25):
            start = rng.uniform(-500, 500, size=2)
            direction = rng.normal(size=2)
            direction /= np.linalg.norm(direction)
            length = rng.uniform(10, 300)
            radius = rng.uniform(0.5, 20)
            capsule = buffer_polyline([tuple(start), tuple(start + length * direction)], radius)
            analytic = length * 2 * radius + math.pi * radius**2
            assert abs(capsule.area - analytic) <= 0.01 * analytic

        for _ in range(300):
            def rand_box():
                x, y = rng.uniform(0, 50, size=2)
                w, h = rng.uniform(0.5, 30, size=2)
                return PixelBox(x, y, x + w, y + h)

            a, b = rand_box(), rand_box()
            iou = box_iou(a, b)
            assert 0.0 <= iou <= 1.0
            assert iou == pytest.approx(box_iou(b, a))
            assert box_iou(a, a) == 1.0


def test_open_set_decoding():
    with criterion("open-set decoding at tau 0.9 and tau 0 argmax", 5.0):
        confident = np.asarray([0.95, 0.03, 0.02]).reshape(1, 1, 3)
        assert threshold_softmax(confident, tau=0.9)[0, 0] == 1
        unsure = np.asarray([0.6, 0.3, 0.1]).reshape(1, 1, 3)
        assert threshold_softmax(unsure, tau=0.9)[0, 0] == 0
        rng = np.random.default_rng(303)
        scores = rng.dirichlet([1, 1, 1, 1], size=10000)[:, :3].reshape(100, 100, 3)
        decoded = threshold_softmax(scores, tau=0.0)
        assert np.array_equal(decoded, scores.argmax(axis=2).astype(np.uint8) + 1)


def test_tiling_17408():
    with criterion("17408^2 label grid tiles into 1156 full histograms", 30.0):
        labels = np.zeros((17408, 17408), dtype=np.uint8)
        labels[::97, ::89] = 3
        labels[5000:9000, 11000:12000] = 1
        records = tile_image(labels, "event", "image")
        assert len(records) == 1156
        assert all(sum(r.histogram) == 512 * 512 for r in records)
        total = np.zeros(4, dtype=np.int64)
        for r in records:
            total += np.asarray(r.histogram)
        assert total.sum() == 17408 * 17408
        assert total[1] == 4000 * 1000

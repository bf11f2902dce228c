import threading
import time

import numpy as np
import pytest

from conftest import load_shared

from fmars_sidecar import EmbeddingCache, ModelRegistry, StubSegmenter, create_app
from fmars_sidecar.inference import InferenceQueue


def test_embedding_cache_hit_on_repeated_tile(stub_client):
    request = load_shared("segment_request.json")
    first = stub_client.post("/v1/segment", json=request)
    hits_before = stub_client.registry.cache.hits
    second = stub_client.post("/v1/segment", json=request)
    assert stub_client.registry.cache.hits == hits_before + 1
    assert second.content == first.content  # cache hit is byte-identical


def test_cache_lru_eviction():
    cache = EmbeddingCache(capacity=2)
    calls = []

    def loader(key):
        def compute():
            calls.append(key)
            return key.upper()

        return compute

    assert cache.get_or_compute("a", loader("a")) == "A"
    assert cache.get_or_compute("b", loader("b")) == "B"
    assert cache.get_or_compute("a", loader("a")) == "A"  # refresh a
    assert cache.get_or_compute("c", loader("c")) == "C"  # evicts b
    assert cache.get_or_compute("b", loader("b")) == "B"  # recomputed
    assert calls == ["a", "b", "c", "b"]
    assert cache.hits == 1
    assert len(cache) == 2


def test_multimask_selects_highest_confidence(stub_client):
    request = load_shared("segment_request.json")
    single = stub_client.post("/v1/segment", json=request).json()
    request["multimask"] = True
    multi = stub_client.post("/v1/segment", json=request).json()
    assert multi == single  # erode-1 at 0.9 beats the alternatives


def test_boxes_clamped_to_tile(stub_client):
    request = load_shared("segment_request.json")
    request["boxes"] = [{"x0": -5.0, "y0": -5.0, "x1": 10.0, "y1": 10.0}]
    payload = stub_client.post("/v1/segment", json=request).json()
    rle = payload["results"][0]["rle"]
    assert rle["size"] == [32, 32]
    # eroded interior of the clamped box [0,10)x[0,10): pixels [1,9)x[1,9)
    mask = np.zeros((32, 32), dtype=bool)
    mask[1:9, 1:9] = True
    from fmars_sidecar import encode_mask

    assert rle == encode_mask(mask)


def test_inference_queue_serializes_execution():
    queue = InferenceQueue()
    active = []
    overlap = []

    def job(i):
        def run():
            active.append(i)
            if len(active) > 1:
                overlap.append(tuple(active))
            time.sleep(0.01)
            active.remove(i)
            return i

        return run

    futures = [queue.submit(job(i)) for i in range(8)]
    results = [f.result(5) for f in futures]
    assert sorted(results) == list(range(8))
    assert overlap == []  # never two jobs inside the model at once
    queue.shutdown()


def test_queue_propagates_exceptions():
    queue = InferenceQueue()

    def boom():
        raise RuntimeError("synthetic model failure")

    with pytest.raises(RuntimeError, match="synthetic model failure"):
        queue.run(boom, timeout=5)
    queue.shutdown()


def test_stub_segmenter_candidates_match_rule():
    seg = StubSegmenter()
    embedding = seg.embed(np.zeros((16, 16, 3), dtype=np.uint8))
    box = {"x0": 2.0, "y0": 3.0, "x1": 10.0, "y1": 12.0}
    options = seg.candidates(embedding, box, multimask=True)
    assert [score for _, score in options] == [0.9, 0.6, 0.5]
    primary = options[0][0]
    assert primary[4, 4] and not primary[3, 2]
    # eroded box [3,9)x[4,11): pixel centers give cols 3..8, rows 4..10
    assert primary.sum() == 6 * 7


def test_registry_from_env(monkeypatch, tmp_path):
    fixtures = tmp_path / "f.json"
    fixtures.write_text("{}")
    monkeypatch.setenv("FMARS_SIDECAR_FIXTURES", str(fixtures))
    monkeypatch.setenv("FMARS_SIDECAR_CACHE_SIZE", "3")
    registry = ModelRegistry.from_env().load()
    assert registry.ready
    assert registry.cache.capacity == 3
    assert registry.model_names() == ["stub-detector", "stub-segmenter"]

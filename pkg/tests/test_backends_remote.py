import numpy as np
import pytest

from fmars.backends import (
    BackendInputError,
    ProtocolError,
    RemoteBackend,
    RetryableBackendError,
)
from fmars.backends import wire
from fmars.backends.types import DetectorRequest, SegmentRequest
from fmars.geometry import PixelBox, rle_decode

from conftest import load_fixture


def make_client(server, **kw):
    kw.setdefault("timeout_s", 5.0)
    kw.setdefault("backoff_s", 0.01)
    return RemoteBackend(server.url, **kw)


def fixture_tile():
    return wire.decode_png_b64(load_fixture("detect_request.json")["image_png_b64"])


def test_recorded_detect_response_parses_to_fixture_boxes(scripted_server):
    scripted_server.push(200, load_fixture("detect_response.json"))
    client = make_client(scripted_server)
    boxes = client.detect(DetectorRequest(fixture_tile(), "bushes", 0.12, 0.3))
    expected = wire.detect_response_from_json(load_fixture("detect_response.json"))
    assert boxes == expected
    method, path, sent = scripted_server.requests[0]
    assert (method, path) == ("POST", "/v1/detect")
    assert sent == load_fixture("detect_request.json")


def test_recorded_segment_response_parses(scripted_server):
    scripted_server.push(200, load_fixture("segment_response.json"))
    client = make_client(scripted_server)
    request_payload = load_fixture("segment_request.json")
    boxes = tuple(wire.box_from_json(b) for b in request_payload["boxes"])
    result = client.segment(SegmentRequest(fixture_tile(), boxes))
    assert result.scores == (0.9, 0.9)
    method, path, sent = scripted_server.requests[0]
    assert (method, path) == ("POST", "/v1/segment")
    assert sent == request_payload


def test_retry_after_503(scripted_server):
    scripted_server.push(503, {"error": "busy"})
    scripted_server.push(200, load_fixture("detect_response.json"))
    client = make_client(scripted_server)
    boxes = client.detect(DetectorRequest(fixture_tile(), "bushes", 0.12, 0.3))
    assert len(boxes) == 2
    assert len(scripted_server.requests) == 2


def test_retries_exhausted_raise_retryable(scripted_server):
    for _ in range(3):
        scripted_server.push(503, {"error": "busy"})
    client = make_client(scripted_server, attempts=3)
    with pytest.raises(RetryableBackendError):
        client.health()
    assert len(scripted_server.requests) == 3


def test_400_is_fatal_input_error(scripted_server):
    scripted_server.push(400, {"error": "image too large"})
    client = make_client(scripted_server)
    with pytest.raises(BackendInputError, match="image too large"):
        client.detect(DetectorRequest(fixture_tile(), "bushes", 0.12, 0.3))
    assert len(scripted_server.requests) == 1  # no retry on 400


def test_rle_counts_mismatch_is_protocol_error(scripted_server):
    bad = load_fixture("segment_response.json")
    bad["results"][0]["rle"]["counts"] = [1, 2, 3]
    scripted_server.push(200, bad)
    client = make_client(scripted_server)
    boxes = (PixelBox(4.0, 6.0, 14.0, 16.0), PixelBox(18.0, 8.0, 30.0, 28.0))
    with pytest.raises(ProtocolError):
        client.segment(SegmentRequest(fixture_tile(), boxes))


def test_result_count_mismatch_is_protocol_error(scripted_server):
    payload = load_fixture("segment_response.json")
    payload["results"] = payload["results"][:1]
    scripted_server.push(200, payload)
    client = make_client(scripted_server)
    boxes = (PixelBox(4.0, 6.0, 14.0, 16.0), PixelBox(18.0, 8.0, 30.0, 28.0))
    with pytest.raises(ProtocolError, match="1 results for 2 boxes"):
        client.segment(SegmentRequest(fixture_tile(), boxes))


def test_default_thresholds_travel_verbatim(scripted_server):
    scripted_server.push(200, {"boxes": []})
    client = make_client(scripted_server)
    client.detect(DetectorRequest(fixture_tile(), "green trees", 0.12, 0.3))
    _, _, sent = scripted_server.requests[0]
    assert sent["box_threshold"] == 0.12
    assert sent["text_threshold"] == 0.3
    assert sent["prompt"] == "green trees"


def test_wire_roundtrip_of_protocol_messages():
    for name, decode, encode in [
        (
            "detect_response.json",
            wire.detect_response_from_json,
            wire.detect_response_to_json,
        ),
        (
            "segment_response.json",
            wire.segment_response_from_json,
            wire.segment_response_to_json,
        ),
    ]:
        payload = load_fixture(name)
        assert encode(decode(payload)) == payload


def test_png_roundtrip_preserves_pixels():
    rng = np.random.default_rng(3)
    tile = rng.integers(0, 256, size=(40, 56, 3), dtype=np.uint8)
    assert np.array_equal(wire.decode_png_b64(wire.encode_png_b64(tile)), tile)

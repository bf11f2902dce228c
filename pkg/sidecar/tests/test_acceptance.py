"""Secondary acceptance: protocol conformance on the shared fixtures, and
the pipeline's remote client against this sidecar (stub models) reproducing
the mock-run golden output byte for byte."""
import contextlib
import socket
import threading
import time
from pathlib import Path

import pytest
import uvicorn

from conftest import REPO_ROOT, SHARED_FIXTURES, load_shared, primary_tests_on_path

from fmars_sidecar import ModelRegistry, create_app

GOLDEN = REPO_ROOT / "tests" / "fixtures" / "golden_annotations.geojson"


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


@contextlib.contextmanager
def running_sidecar(fixtures_path):
    """Boot the app under uvicorn on an ephemeral port, in a thread."""
    app = create_app(ModelRegistry(fixtures_path=fixtures_path))
    config = uvicorn.Config(app, host="127.0.0.1", port=0, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 15
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("sidecar did not start in time")
        time.sleep(0.02)
    port = server.servers[0].sockets[0].getsockname()[1]
    try:
        yield f"http://127.0.0.1:{port}"
    finally:
        server.should_exit = True
        thread.join(timeout=10)


def test_protocol_conformance_on_shared_fixtures(stub_client):
    with criterion("stub sidecar passes the shared contract fixtures", 60.0):
        assert stub_client.get("/v1/health").json() == load_shared("health_response.json")

        detect = stub_client.post("/v1/detect", json=load_shared("detect_request.json"))
        assert detect.status_code == 200
        assert detect.json() == load_shared("detect_response.json")

        segment = stub_client.post(
            "/v1/segment", json=load_shared("segment_request.json")
        )
        assert segment.status_code == 200
        assert segment.json() == load_shared("segment_response.json")

        bad_box = load_shared("segment_request.json")
        bad_box["boxes"] = [{"x0": 3, "y0": 3, "x1": 1, "y1": 9}]
        assert stub_client.post("/v1/segment", json=bad_box).status_code == 400

        registry = stub_client.registry
        registry.ready = False
        assert stub_client.get("/v1/health").status_code == 503
        registry.ready = True


def test_remote_pipeline_reproduces_mock_golden(tmp_path):
    with criterion("pipeline remote client vs stub sidecar matches golden", 60.0):
        primary_tests_on_path()
        import e2e_scene
        from fmars.cli import main

        config_path = e2e_scene.write_cli_inputs(tmp_path)
        detector_fixtures = tmp_path / "detector_fixtures.json"
        assert detector_fixtures.exists()

        with running_sidecar(detector_fixtures) as url:
            rc = main(
                [
                    "annotate",
                    "--config",
                    str(config_path),
                    "--backend",
                    "remote",
                    "--url",
                    url,
                ]
            )
        assert rc == 0
        produced = (tmp_path / "annotations.geojson").read_bytes()
        assert produced == GOLDEN.read_bytes()


def test_remote_pipeline_via_env_url(tmp_path, monkeypatch):
    with criterion("FMARS_BACKEND_URL fallback reaches the sidecar", 60.0):
        primary_tests_on_path()
        import e2e_scene
        from fmars.cli import main

        config_path = e2e_scene.write_cli_inputs(tmp_path)
        with running_sidecar(tmp_path / "detector_fixtures.json") as url:
            monkeypatch.setenv("FMARS_BACKEND_URL", url)
            rc = main(["annotate", "--config", str(config_path), "--backend", "remote"])
        assert rc == 0
        assert (tmp_path / "annotations.geojson").read_bytes() == GOLDEN.read_bytes()

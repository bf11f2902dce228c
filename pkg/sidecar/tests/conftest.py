import json
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[2]
SHARED_FIXTURES = REPO_ROOT / "tests" / "fixtures" / "protocol"
PRIMARY_TESTS = REPO_ROOT / "tests"


def load_shared(name: str):
    return json.loads((SHARED_FIXTURES / name).read_text())


@pytest.fixture()
def stub_client():
    """TestClient for an app wired to the shared stub fixtures."""
    from fastapi.testclient import TestClient

    from fmars_sidecar import ModelRegistry, create_app

    registry = ModelRegistry(fixtures_path=SHARED_FIXTURES / "stub_fixtures.json")
    app = create_app(registry)
    with TestClient(app) as client:
        client.registry = registry
        yield client


def primary_tests_on_path():
    if str(PRIMARY_TESTS) not in sys.path:
        sys.path.insert(0, str(PRIMARY_TESTS))

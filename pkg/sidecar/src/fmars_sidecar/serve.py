"""Entry point: run the sidecar under uvicorn, configured via environment."""
from __future__ import annotations

import os

import uvicorn

from .app import create_app


def main():
    host = os.environ.get("FMARS_SIDECAR_HOST", "127.0.0.1")
    port = int(os.environ.get("FMARS_SIDECAR_PORT", "8765"))
    uvicorn.run(create_app(), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()

"""HTTP client for a remote inference sidecar speaking the wire protocol."""
from __future__ import annotations

import threading
import time

import requests

from .types import (
    BackendInputError,
    Detector,
    DetectorRequest,
    ProtocolError,
    RetryableBackendError,
    Segmenter,
    SegmentRequest,
    SegmentResult,
)
from . import wire


class RemoteBackend(Detector, Segmenter):
    """Detector + segmenter over HTTP with bounded in-flight requests.

    Retryable failures (503, timeouts, connection errors) are retried with
    exponential backoff; HTTP 400 and malformed responses are fatal.
    """

    def __init__(
        self,
        base_url: str,
        timeout_s: float = 120.0,
        max_in_flight: int = 4,
        attempts: int = 3,
        backoff_s: float = 0.5,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout_s = timeout_s
        self.attempts = attempts
        self.backoff_s = backoff_s
        self._slots = threading.BoundedSemaphore(max_in_flight)
        self._local = threading.local()

    def _session(self) -> requests.Session:
        if not hasattr(self._local, "session"):
            self._local.session = requests.Session()
        return self._local.session

    def _request(self, method: str, path: str, payload=None) -> dict:
        url = self.base_url + path
        last_error = None
        for attempt in range(self.attempts):
            if attempt:
                time.sleep(self.backoff_s * 2 ** (attempt - 1))
            try:
                with self._slots:
                    response = self._session().request(
                        method, url, json=payload, timeout=self.timeout_s
                    )
            except (requests.Timeout, requests.ConnectionError) as exc:
                last_error = RetryableBackendError(f"{url}: {exc}")
                continue
            if response.status_code == 503:
                last_error = RetryableBackendError(f"{url}: 503 {_error_text(response)}")
                continue
            if response.status_code == 400:
                raise BackendInputError(f"{url}: {_error_text(response)}")
            if response.status_code != 200:
                raise ProtocolError(f"{url}: unexpected status {response.status_code}")
            try:
                return response.json()
            except ValueError as exc:
                raise ProtocolError(f"{url}: response is not JSON: {exc}") from exc
        raise last_error

    def health(self) -> dict:
        return self._request("GET", "/v1/health")

    def detect(self, req: DetectorRequest) -> list:
        payload = wire.detect_request_to_json(
            req.tile, req.prompt, req.box_threshold, req.text_threshold
        )
        return wire.detect_response_from_json(self._request("POST", "/v1/detect", payload))

    def segment(self, req: SegmentRequest) -> SegmentResult:
        payload = wire.segment_request_to_json(req.tile, req.boxes, req.multimask)
        results = wire.segment_response_from_json(
            self._request("POST", "/v1/segment", payload)
        )
        if len(results) != len(req.boxes):
            raise ProtocolError(
                f"segment returned {len(results)} results for {len(req.boxes)} boxes"
            )
        h, w = req.tile.shape[:2]
        for rle, _ in results:
            if (rle.height, rle.width) != (h, w):
                raise ProtocolError(
                    f"mask size {rle.height}x{rle.width} does not match tile {h}x{w}"
                )
        return SegmentResult(
            masks=tuple(rle for rle, _ in results),
            scores=tuple(score for _, score in results),
        )


def _error_text(response) -> str:
    try:
        return response.json().get("error", response.text[:200])
    except ValueError:
        return response.text[:200]

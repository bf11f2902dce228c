"""Detector/segmenter backends: contracts, deterministic mocks, remote client."""

from .mock import MockDetector, MockSegmenter, eroded_box_mask, tile_hash
from .remote import RemoteBackend
from .types import (
    BackendError,
    BackendInputError,
    Detector,
    DetectorRequest,
    MultiMaskSegmenter,
    ProtocolError,
    RetryableBackendError,
    Segmenter,
    SegmentRequest,
    SegmentResult,
)

__all__ = [
    "BackendError",
    "BackendInputError",
    "Detector",
    "DetectorRequest",
    "MockDetector",
    "MockSegmenter",
    "MultiMaskSegmenter",
    "ProtocolError",
    "RemoteBackend",
    "RetryableBackendError",
    "Segmenter",
    "SegmentRequest",
    "SegmentResult",
    "eroded_box_mask",
    "tile_hash",
]

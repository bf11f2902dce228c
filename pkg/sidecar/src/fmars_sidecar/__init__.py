"""Inference sidecar: detector + segmenter behind a small JSON/HTTP protocol."""

from .app import create_app
from .cache import EmbeddingCache
from .models import ModelRegistry, StubDetector, StubSegmenter, image_hash
from .rle import encode_mask

__version__ = "0.1.0"

__all__ = [
    "EmbeddingCache",
    "ModelRegistry",
    "StubDetector",
    "StubSegmenter",
    "create_app",
    "encode_mask",
    "image_hash",
]

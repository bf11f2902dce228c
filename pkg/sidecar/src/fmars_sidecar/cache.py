"""Thread-safe LRU cache for image embeddings keyed by content hash."""
from __future__ import annotations

import threading
from collections import OrderedDict


class EmbeddingCache:
    def __init__(self, capacity: int = 16):
        if capacity < 1:
            raise ValueError("cache capacity must be at least 1")
        self.capacity = capacity
        self.hits = 0
        self.misses = 0
        self._items: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get_or_compute(self, key: str, compute):
        """Return the cached embedding for `key`, computing it on a miss.

        A hit must be indistinguishable from a miss to callers: the same
        object the compute function produced is returned either way.
        """
        with self._lock:
            if key in self._items:
                self.hits += 1
                self._items.move_to_end(key)
                return self._items[key]
        value = compute()
        with self._lock:
            if key not in self._items:
                self.misses += 1
                self._items[key] = value
                if len(self._items) > self.capacity:
                    self._items.popitem(last=False)
            else:
                self.hits += 1
            self._items.move_to_end(key)
            return self._items[key]

    def __len__(self):
        with self._lock:
            return len(self._items)

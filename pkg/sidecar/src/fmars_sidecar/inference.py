"""Single-consumer inference queue.

HTTP handling is concurrent, but model execution is serialized through one
worker thread (single-accelerator assumption): requests enqueue a job and
block on its future.
"""
from __future__ import annotations

import concurrent.futures
import queue
import threading


class InferenceQueue:
    def __init__(self):
        self._jobs: queue.Queue = queue.Queue()
        self._worker = threading.Thread(target=self._run, daemon=True)
        self._closed = False
        self._worker.start()

    def _run(self):
        while True:
            item = self._jobs.get()
            if item is None:
                return
            fn, future = item
            if not future.set_running_or_notify_cancel():
                continue
            try:
                future.set_result(fn())
            except BaseException as exc:
                future.set_exception(exc)

    def submit(self, fn) -> concurrent.futures.Future:
        if self._closed:
            raise RuntimeError("inference queue is shut down")
        future: concurrent.futures.Future = concurrent.futures.Future()
        self._jobs.put((fn, future))
        return future

    def run(self, fn, timeout: float | None = None):
        return self.submit(fn).result(timeout)

    def shutdown(self):
        self._closed = True
        self._jobs.put(None)

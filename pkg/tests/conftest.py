import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name):
    return json.loads((FIXTURES / "protocol" / name).read_text())


class ScriptedServer:
    """Local HTTP server that replays a queue of scripted responses.

    Each script entry is (status, payload-dict). Requests received are
    recorded for assertions.
    """

    def __init__(self):
        self.script = []
        self.requests = []
        self._lock = threading.Lock()
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def _respond(self):
                length = int(self.headers.get("Content-Length", 0))
                body = self.rfile.read(length) if length else b""
                with outer._lock:
                    outer.requests.append(
                        (self.command, self.path, json.loads(body) if body else None)
                    )
                    status, payload = outer.script.pop(0) if outer.script else (500, {})
                data = json.dumps(payload).encode()
                self.send_response(status)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            do_GET = do_POST = _respond

            def log_message(self, *args):
                pass

        self._server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()

    @property
    def url(self):
        host, port = self._server.server_address
        return f"http://{host}:{port}"

    def push(self, status, payload):
        with self._lock:
            self.script.append((status, payload))

    def close(self):
        self._server.shutdown()
        self._server.server_close()


@pytest.fixture()
def scripted_server():
    server = ScriptedServer()
    yield server
    server.close()

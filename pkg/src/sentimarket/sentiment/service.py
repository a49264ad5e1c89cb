"""HTTP endpoint serving sentiment scores.

POST /sentiment with ``{"text": "..."}`` returns the combined score, the
two raw analyzer scores, and the label. The handler only reads immutable
state, so the threading server can process requests concurrently.
"""

from __future__ import annotations

import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .engine import score_text
from .lexicon import Lexicon

logger = logging.getLogger(__name__)


class SentimentRequestHandler(BaseHTTPRequestHandler):
    server: "SentimentServer"

    # quiet per-request stderr chatter; route through logging instead
    def log_message(self, format: str, *args) -> None:  # noqa: A002
        logger.debug("%s %s", self.address_string(), format % args)

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_POST(self) -> None:
        if self.path != "/sentiment":
            self._send_json(404, {"error": "not found"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            payload = json.loads(self.rfile.read(length).decode("utf-8"))
        except (ValueError, UnicodeDecodeError):
            self._send_json(400, {"error": "request body must be JSON"})
            return
        if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
            self._send_json(400, {"error": "missing string field 'text'"})
            return
        result = score_text(payload["text"], self.server.lexicon)
        self._send_json(200, {
            "sentiment": result.sentiment,
            "valence": result.valence,
            "polarity": result.polarity,
            "label": result.label.value,
        })

    def do_GET(self) -> None:
        if self.path == "/healthz":
            body = b"ok"
            self.send_response(200)
            self.send_header("Content-Type", "text/plain")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
            return
        self._method_not_allowed()

    def do_HEAD(self) -> None:
        self._method_not_allowed()

    def do_PUT(self) -> None:
        self._method_not_allowed()

    def do_DELETE(self) -> None:
        self._method_not_allowed()

    def do_PATCH(self) -> None:
        self._method_not_allowed()

    def _method_not_allowed(self) -> None:
        self._send_json(405, {"error": "method not allowed; POST /sentiment"})


class SentimentServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], lexicon: Lexicon):
        super().__init__(address, SentimentRequestHandler)
        self.lexicon = lexicon


def serve_sentiment(host: str, port: int, lexicon: Lexicon) -> SentimentServer:
    """Start the service in a background thread; caller owns shutdown."""
    server = SentimentServer((host, port), lexicon)
    thread = threading.Thread(target=server.serve_forever, name="sentiment-http", daemon=True)
    thread.start()
    logger.info("sentiment service listening on %s:%d", *server.server_address[:2])
    return server


def run_sentiment_service(host: str, port: int, lexicon: Lexicon) -> None:
    """Blocking entry point used by the CLI."""
    server = SentimentServer((host, port), lexicon)
    logger.info("sentiment service listening on %s:%d", *server.server_address[:2])
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()

"""HTTP face of the backend: /graphql plus a health probe.

POST /graphql executes one operation from the standard JSON envelope;
GET /graphql returns the schema document byte-for-byte as committed to
the repository. The threading server plus the store's per-index locking
make concurrent crawler and dashboard traffic safe.
"""

from __future__ import annotations

import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources

from .auth import ACCESS_KEY_HEADER, KeyRing
from .graphql_lite import emit_sdl, execute
from .schema import SCHEMA, GraphQLContext
from .services import Services

logger = logging.getLogger(__name__)


def schema_document() -> str:
    """The committed schema document (also what GET /graphql serves)."""
    return resources.files("sentimarket.backend").joinpath("schema.graphql").read_text("utf-8")


def generated_schema_document() -> str:
    """Schema document derived from the executable schema definition."""
    return emit_sdl(SCHEMA)


class BackendRequestHandler(BaseHTTPRequestHandler):
    server: "BackendServer"

    def log_message(self, format: str, *args) -> None:  # noqa: A002
        logger.debug("%s %s", self.address_string(), format % args)

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: dict) -> None:
        self._send(status, json.dumps(payload).encode("utf-8"), "application/json")

    def do_GET(self) -> None:
        if self.path == "/healthz":
            self._send(200, b"ok", "text/plain; charset=utf-8")
        elif self.path == "/graphql":
            self._send(200, self.server.sdl_bytes, "application/graphql; charset=utf-8")
        else:
            self._send_json(404, {"errors": [{"message": "not found"}]})

    def do_POST(self) -> None:
        if self.path != "/graphql":
            self._send_json(404, {"errors": [{"message": "not found"}]})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            envelope = json.loads(self.rfile.read(length).decode("utf-8"))
            if not isinstance(envelope, dict) or not isinstance(envelope.get("query"), str):
                raise ValueError("missing 'query'")
        except (ValueError, UnicodeDecodeError):
            self._send_json(400, {"errors": [{
                "message": "body must be a JSON object with a 'query' string",
                "extensions": {"code": "BAD_REQUEST"},
            }]})
            return
        role = self.server.keyring.role_for(self.headers.get(ACCESS_KEY_HEADER))
        context = GraphQLContext(services=self.server.services, role=role)
        result = execute(
            SCHEMA,
            envelope["query"],
            variables=envelope.get("variables"),
            operation_name=envelope.get("operationName"),
            context=context,
        )
        self._send_json(200, result)


class BackendServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], services: Services, keyring: KeyRing):
        super().__init__(address, BackendRequestHandler)
        self.services = services
        self.keyring = keyring
        self.sdl_bytes = schema_document().encode("utf-8")

    @property
    def url(self) -> str:
        host, port = self.server_address[:2]
        return f"http://{host}:{port}"


def serve_backend(host: str, port: int, services: Services, keyring: KeyRing) -> BackendServer:
    """Start the backend in a background thread; caller owns shutdown."""
    server = BackendServer((host, port), services, keyring)
    thread = threading.Thread(target=server.serve_forever, name="backend-http", daemon=True)
    thread.start()
    logger.info("backend listening on %s (production=%s)", server.url, services.production)
    return server


def run_backend(host: str, port: int, services: Services, keyring: KeyRing) -> None:
    """Blocking entry point used by the CLI."""
    server = BackendServer((host, port), services, keyring)
    logger.info("backend listening on %s (production=%s)", server.url, services.production)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()

"""HTTP-style session service: a pure request router plus a thin stdlib server.

The router is a plain function from (method, path, body) to (status, body),
so it can be exercised in-process without sockets. The server wrapper adds
JSON-over-HTTP, CORS headers for the browser client, optional static-file
hosting for the frontend build, and a 5-second sweep thread that ticks every
live session with wall-clock time to drive inactivity messages.
"""

from __future__ import annotations

import json
import re
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from .bank import Bank
from .events import write_log
from .policy import Condition
from .session import Session, SkipLimitReached, TutorEngine, UnknownNode, WrongPhase

SWEEP_SECONDS = 5.0


@dataclass
class ApiResponse:
    status: int
    body: dict


class TutorService:
    """Holds live sessions and routes API requests to them.

    Sessions created with "virtual": true advance their clock only through the
    tick endpoint; others ride the wall-clock sweep.
    """

    def __init__(self, bank: Bank, engine: Optional[TutorEngine] = None, log_dir=None):
        self.bank = bank
        self.engine = engine or TutorEngine(bank)
        self.sessions: dict[str, Session] = {}
        self.virtual: set[str] = set()
        self.log_dir = Path(log_dir) if log_dir else None
        self._counter = 0
        self.lock = threading.Lock()

    # All handlers run under self.lock (the HTTP layer and the sweep thread
    # both acquire it), which serializes each session's command stream.

    def handle_api(self, method: str, path: str, body: Optional[dict] = None) -> ApiResponse:
        body = body or {}
        try:
            return self._route(method, path, body)
        except (WrongPhase, SkipLimitReached) as exc:
            return ApiResponse(409, {"error": str(exc)})
        except KeyError as exc:  # unknown session, node, or endpoint
            return ApiResponse(404, {"error": str(exc)})
        except ValueError as exc:  # malformed formula, unknown rule, bad arity, bad field
            return ApiResponse(422, {"error": str(exc)})

    def _route(self, method: str, path: str, body: dict) -> ApiResponse:
        if method == "POST" and path == "/sessions":
            return self._create_session(body)
        m = re.fullmatch(r"/sessions/([^/]+)", path)
        if m and method == "GET":
            return ApiResponse(200, self._session(m.group(1)).snapshot())
        m = re.fullmatch(r"/sessions/([^/]+)/(\w+)", path)
        if m and method == "POST":
            return self._command(m.group(1), m.group(2), body)
        m = re.fullmatch(r"/sessions/([^/]+)/assertions/(\d+)/delete", path)
        if m and method == "POST":
            session = self._session(m.group(1))
            session.delete_assertion(int(m.group(2)))
            return ApiResponse(200, session.snapshot())
        raise KeyError(f"no endpoint {method} {path}")

    def _session(self, session_id: str) -> Session:
        if session_id not in self.sessions:
            raise UnknownNode(f"no session {session_id}")
        return self.sessions[session_id]

    def _create_session(self, body: dict) -> ApiResponse:
        student = str(body.get("student", "anonymous"))
        condition = Condition(body.get("condition", "assertions"))
        seed = int(body.get("seed", 0))
        virtual = bool(body.get("virtual", False))
        self._counter += 1
        session_id = f"{student}-{self._counter}"
        start = float(body["now"]) if virtual and "now" in body else (
            0.0 if virtual else time.time()
        )
        session = Session(
            student, condition, self.bank, self.engine, seed,
            session_id=session_id, start_time=start,
        )
        self.sessions[session_id] = session
        if virtual:
            self.virtual.add(session_id)
        return ApiResponse(200, session.snapshot())

    def _command(self, session_id: str, command: str, body: dict) -> ApiResponse:
        session = self._session(session_id)
        if command == "steps":
            outcome = session.submit_step(
                [int(i) for i in body.get("sources", [])],
                str(body.get("rule", "")),
                str(body.get("derived", "")),
            )
            if session.terminal:
                self._persist(session)
            snapshot = session.snapshot()
            if not outcome.verdict.is_valid:
                return ApiResponse(
                    422, {"error": outcome.verdict.message, "snapshot": snapshot}
                )
            return ApiResponse(200, snapshot)
        if command == "hint":
            session.request_on_demand()
        elif command == "skip":
            session.skip_problem()
        elif command == "restart":
            session.restart_problem()
        elif command == "advance":
            session.advance_example()
        elif command == "tick":
            session.tick(float(body.get("now", session.clock)))
        else:
            raise KeyError(f"no command {command!r}")
        if session.terminal:
            self._persist(session)
        return ApiResponse(200, session.snapshot())

    def sweep(self, now: Optional[float] = None) -> None:
        """Tick every wall-clock session; the server calls this every 5 s."""
        now = time.time() if now is None else now
        with self.lock:
            for sid, session in self.sessions.items():
                if sid not in self.virtual and not session.terminal:
                    session.tick(now)

    def _persist(self, session: Session) -> None:
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            write_log(self.log_dir / f"{session.session_id}.jsonl", session.events)


_CONTENT_TYPES = {
    ".html": "text/html",
    ".js": "text/javascript",
    ".css": "text/css",
    ".map": "application/json",
    ".svg": "image/svg+xml",
}


def _make_handler(service: TutorService, ui_dir: Optional[Path]):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):
            pass

        def _reply(self, response: ApiResponse) -> None:
            payload = json.dumps(response.body).encode()
            self.send_response(response.status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(payload)

        def do_OPTIONS(self):
            self._reply(ApiResponse(204, {}))

        def do_GET(self):
            if self.path.startswith("/sessions/"):
                with service.lock:
                    self._reply(service.handle_api("GET", self.path))
                return
            self._static()

        def do_POST(self):
            length = int(self.headers.get("Content-Length", 0))
            raw = self.rfile.read(length) if length else b"{}"
            try:
                body = json.loads(raw) if raw.strip() else {}
            except json.JSONDecodeError:
                self._reply(ApiResponse(422, {"error": "request body is not JSON"}))
                return
            with service.lock:
                self._reply(service.handle_api("POST", self.path, body))

        def _static(self):
            if ui_dir is None:
                self._reply(ApiResponse(404, {"error": "no UI bundled; API only"}))
                return
            rel = self.path.split("?")[0].lstrip("/") or "index.html"
            target = (ui_dir / rel).resolve()
            if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
                self._reply(ApiResponse(404, {"error": f"no file {rel}"}))
                return
            data = target.read_bytes()
            self.send_response(200)
            self.send_header(
                "Content-Type", _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
            )
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

    return Handler


@dataclass
class TutorServer:
    service: TutorService
    httpd: ThreadingHTTPServer
    _stop: threading.Event = field(default_factory=threading.Event)

    @property
    def port(self) -> int:
        return self.httpd.server_address[1]

    def serve_forever(self) -> None:
        self.httpd.serve_forever()

    def shutdown(self) -> None:
        self._stop.set()
        self.httpd.shutdown()
        self.httpd.server_close()


def make_server(
    bank: Bank,
    port: int = 0,
    engine: Optional[TutorEngine] = None,
    ui_dir=None,
    log_dir=None,
    sweep: bool = True,
) -> TutorServer:
    service = TutorService(bank, engine, log_dir=log_dir)
    ui = Path(ui_dir) if ui_dir else None
    httpd = ThreadingHTTPServer(("127.0.0.1", port), _make_handler(service, ui))
    server = TutorServer(service, httpd)
    if sweep:
        def _sweeper():
            while not server._stop.wait(SWEEP_SECONDS):
                service.sweep()

        threading.Thread(target=_sweeper, daemon=True).start()
    return server

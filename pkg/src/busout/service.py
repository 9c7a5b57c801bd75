"""Local exploration service: play instances over HTTP.

Sessions live in memory behind ``/v1`` (see ``docs/service-api.md`` for the
exact schemas).  Each session holds an initial configuration, the current
state, and the dispatch history; the browser client renders state documents
verbatim and never re-implements game rules, so the engine here is the
single source of truth.

* ``POST /v1/sessions``                create a session from an instance file
* ``GET  /v1/sessions/<id>/state``     full state document
* ``GET  /v1/sessions/<id>/moves``     legal moves, ``?annotate=1`` adds solver verdicts
* ``POST /v1/sessions/<id>/dispatch``  apply a move, returns state + boarding log
* ``POST /v1/sessions/<id>/undo``      revert the last dispatch
* ``POST /v1/sessions/<id>/reset``     back to the initial configuration
* ``POST /v1/sessions/<id>/solve``     run the solver from the current state

Illegal moves answer 409 with the refusal reason, unknown sessions 404, and
ineligible uploads 422.  Requests touching one session are serialized by a
per-session lock; distinct sessions proceed in parallel.  The store keeps a
bounded number of sessions and evicts the least recently used.
"""

from __future__ import annotations

import json
import threading
import uuid
from collections import OrderedDict
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qs, urlparse

from .fileformat import ParseError, parse_instance, solve_document
from .model import (
    BoardingEvent,
    Configuration,
    GameStatus,
    NoEmptySpotError,
    NotFreeError,
    UnknownBusError,
    check_eligibility,
    classify,
    dispatch_events,
    legal_moves,
    normalize_boarding,
    state_key,
)
from .solver import IneligibleError, SolveBudget, Verdict, solve

_ANNOTATION = {
    Verdict.SOLVABLE: "safe",
    Verdict.UNSOLVABLE: "losing",
    Verdict.INCONCLUSIVE: "unknown",
}


class Session:
    """One play-through: initial state, current state, history, annotations."""

    def __init__(self, session_id: str, initial: Configuration):
        self.id = session_id
        self.initial, self.initial_events = normalize_boarding(initial)
        self.current = self.initial
        self.history: list[tuple[str, list[BoardingEvent]]] = []
        self.annotations: dict[tuple, dict[str, str]] = {}
        self.lock = threading.Lock()

    def apply(self, bus_id: str) -> list[BoardingEvent]:
        if bus_id not in legal_moves(self.current):
            # surface the precise refusal
            if bus_id not in self.current.graph:
                raise UnknownBusError(bus_id)
            if not self.current.graph.is_free(bus_id):
                raise NotFreeError(f"bus {bus_id!r} is still blocked")
            raise NoEmptySpotError("every parking spot is occupied")
        self.current, events = dispatch_events(self.current, bus_id)
        self.history.append((bus_id, events))
        return events

    def undo(self) -> None:
        if not self.history:
            raise IndexError("nothing to undo")
        self.history.pop()
        current = self.initial
        for bus_id, _ in self.history:
            current, _ = dispatch_events(current, bus_id)
        self.current = current

    def reset(self) -> None:
        self.history.clear()
        self.current = self.initial

    def annotate(self, budget: SolveBudget) -> dict[str, str]:
        """Solver verdict per legal move, cached per reached state."""
        key = state_key(self.current)
        cached = self.annotations.get(key)
        if cached is not None:
            return cached
        verdicts: dict[str, str] = {}
        for bus_id in legal_moves(self.current):
            child, _ = dispatch_events(self.current, bus_id)
            verdicts[bus_id] = _ANNOTATION[solve(child, budget).verdict]
        self.annotations[key] = verdicts
        return verdicts


class SessionStore:
    def __init__(self, cap: int):
        self.cap = cap
        self._sessions: "OrderedDict[str, Session]" = OrderedDict()
        self._lock = threading.Lock()

    def create(self, cfg: Configuration) -> Session:
        session = Session(uuid.uuid4().hex[:12], cfg)
        with self._lock:
            self._sessions[session.id] = session
            while len(self._sessions) > self.cap:
                self._sessions.popitem(last=False)
        return session

    def get(self, session_id: str) -> Optional[Session]:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None:
                self._sessions.move_to_end(session_id)
            return session


def _event_doc(cfg: Configuration, event: BoardingEvent) -> dict:
    return {
        "kind": event.kind,
        "spot": event.spot,
        "color": cfg.color_name(event.color),
        "seatsLeft": event.seats_left,
    }


def _state_doc(session: Session) -> dict:
    cfg = session.current
    moves = set(legal_moves(cfg))
    return {
        "sessionId": session.id,
        "classification": classify(cfg).value,
        "palette": list(cfg.palette),
        "spots": [
            {"color": cfg.color_name(e.color), "remaining": e.remaining} if e else None
            for e in cfg.spots.entries
        ],
        "queue": {
            "runs": [[cfg.color_name(c), n] for c, n in cfg.queue.runs],
            "cursor": cfg.queue.cursor,
            "total": cfg.queue.total,
        },
        "graph": {
            "buses": [
                {
                    "id": bus_id,
                    "color": cfg.color_name(label.color),
                    "capacity": label.capacity,
                    "free": bus_id in moves or cfg.graph.is_free(bus_id),
                }
                for bus_id, label in cfg.graph.labels()
            ],
            "blocks": [[u, v] for u, v in cfg.graph.blocks],
        },
        "legalMoves": legal_moves(cfg),
        "history": [
            {"bus": bus_id, "events": [_event_doc(cfg, e) for e in events]}
            for bus_id, events in session.history
        ],
    }


def make_server(
    host: str = "127.0.0.1",
    port: int = 0,
    budget: SolveBudget = SolveBudget(max_states=200_000, time_limit=5.0),
    session_cap: int = 64,
    ui_dir: Optional[str] = None,
) -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server; port 0 picks a free port."""
    store = SessionStore(session_cap)
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # quiet by default
            pass

        # -- plumbing -------------------------------------------------------

        def _send(self, status: int, doc: dict) -> None:
            body = json.dumps(doc).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _error(self, status: int, message: str, **extra) -> None:
            self._send(status, {"error": message, **extra})

        def _body(self) -> bytes:
            length = int(self.headers.get("Content-Length") or 0)
            return self.rfile.read(length) if length else b""

        def _session(self, session_id: str) -> Optional[Session]:
            session = store.get(session_id)
            if session is None:
                self._error(404, f"unknown session {session_id!r}")
            return session

        def do_OPTIONS(self):  # CORS preflight for browser clients
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Content-Length", "0")
            self.end_headers()

        # -- routes ---------------------------------------------------------

        def do_GET(self):
            url = urlparse(self.path)
            parts = [p for p in url.path.split("/") if p]
            if parts == ["v1", "health"]:
                self._send(200, {"ok": True})
                return
            if len(parts) == 4 and parts[:2] == ["v1", "sessions"]:
                session = self._session(parts[2])
                if session is None:
                    return
                with session.lock:
                    if parts[3] == "state":
                        self._send(200, _state_doc(session))
                        return
                    if parts[3] == "moves":
                        query = parse_qs(url.query)
                        doc: dict = {"moves": [
                            {"bus": b} for b in legal_moves(session.current)
                        ]}
                        if query.get("annotate", ["0"])[0] in ("1", "true"):
                            verdicts = session.annotate(budget)
                            for entry in doc["moves"]:
                                entry["annotation"] = verdicts[entry["bus"]]
                        self._send(200, doc)
                        return
            if ui_root is not None:
                self._serve_static(url.path)
                return
            self._error(404, "no such endpoint")

        def do_POST(self):
            parts = [p for p in urlparse(self.path).path.split("/") if p]
            if parts == ["v1", "sessions"]:
                self._create_session()
                return
            if len(parts) == 4 and parts[:2] == ["v1", "sessions"]:
                session = self._session(parts[2])
                if session is None:
                    return
                action = parts[3]
                with session.lock:
                    if action == "dispatch":
                        self._dispatch(session)
                    elif action == "undo":
                        self._undo(session)
                    elif action == "reset":
                        session.reset()
                        self._send(200, {"state": _state_doc(session)})
                    elif action == "solve":
                        result = solve(session.current, budget)
                        self._send(200, solve_document(result))
                    else:
                        self._error(404, f"no such action {action!r}")
                return
            self._error(404, "no such endpoint")

        # -- handlers -------------------------------------------------------

        def _create_session(self):
            try:
                cfg = parse_instance(self._body().decode("utf-8", "replace"))
            except ParseError as exc:
                self._error(400, str(exc))
                return
            report = check_eligibility(cfg)
            if not report.ok:
                self._error(
                    422,
                    "ineligible instance",
                    violations=[v.message for v in report.violations],
                )
                return
            session = store.create(cfg)
            with session.lock:
                self._send(201, {
                    "sessionId": session.id,
                    "state": _state_doc(session),
                    "initialEvents": [
                        _event_doc(session.initial, e) for e in session.initial_events
                    ],
                })

        def _dispatch(self, session: Session):
            try:
                doc = json.loads(self._body() or b"{}")
            except json.JSONDecodeError as exc:
                self._error(400, f"invalid JSON: {exc}")
                return
            bus_id = doc.get("bus")
            if not isinstance(bus_id, str):
                self._error(400, "body must be a JSON object with a \"bus\" id")
                return
            try:
                events = session.apply(bus_id)
            except UnknownBusError:
                self._error(409, f"unknown bus {bus_id!r}", reason="unknown-bus")
                return
            except NotFreeError:
                self._error(409, f"bus {bus_id!r} is still blocked", reason="not-free")
                return
            except NoEmptySpotError:
                self._error(409, "every parking spot is occupied", reason="no-empty-spot")
                return
            self._send(200, {
                "state": _state_doc(session),
                "events": [_event_doc(session.current, e) for e in events],
            })

        def _undo(self, session: Session):
            try:
                session.undo()
            except IndexError:
                self._error(409, "nothing to undo", reason="empty-history")
                return
            self._send(200, {"state": _state_doc(session)})

        # -- optional static UI ----------------------------------------------

        def _serve_static(self, path: str):
            name = path.lstrip("/") or "index.html"
            target = (ui_root / name).resolve()
            if not str(target).startswith(str(ui_root)) or not target.is_file():
                self._error(404, "not found")
                return
            content_types = {
                ".html": "text/html", ".js": "text/javascript",
                ".css": "text/css", ".json": "application/json",
                ".svg": "image/svg+xml",
            }
            body = target.read_bytes()
            self.send_response(200)
            self.send_header(
                "Content-Type", content_types.get(target.suffix, "application/octet-stream")
            )
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return ThreadingHTTPServer((host, port), Handler)


def run_service(
    host: str = "127.0.0.1",
    port: int = 8646,
    budget: SolveBudget = SolveBudget(max_states=200_000, time_limit=5.0),
    session_cap: int = 64,
    ui_dir: Optional[str] = None,
) -> None:
    server = make_server(host, port, budget, session_cap, ui_dir)
    actual_port = server.server_address[1]
    print(f"busout service on http://{host}:{actual_port}/v1 (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()

"""HTTP API around the engine: upload a framework, explore it by id.

Sessions live in memory only. The store keeps at most ``max_sessions``
frameworks, dropping the least recently used, and forgets sessions idle
longer than the TTL; requests for a dropped id get 410 where an unknown
id gets 404. A session's framework never changes, so per-session caches
are pure and GET responses are byte-identical across repeats.

Every non-2xx response body is ``{"status", "code", "message"}``.
"""

from __future__ import annotations

import asyncio
import threading
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import layout as layout_mod
from .explain import (
    SearchBounds,
    SearchCancelled,
    explain_solution,
    explanation_document,
)
from .formats import FrameworkTooLarge, ParseError, parse, serialize
from .grounded import grounded, grounded_document
from .model import Attack, Framework
from .semantics import Semantics, enumerate_labellings, solution_set_document

FORMATS = ("apx", "tgf", "json")


@dataclass(frozen=True)
class ServiceConfig:
    max_sessions: int = 100
    session_ttl: float = 3600.0
    max_body_bytes: int = 2_000_000
    cors_origins: tuple[str, ...] = ()
    cache_enabled: bool = True


class ApiException(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _api_error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "message": message},
    )


@dataclass
class Session:
    id: str
    framework: Framework
    created_at: float
    last_used: float
    lock: threading.Lock = field(default_factory=threading.Lock)
    cache: dict[Any, Any] = field(default_factory=dict)
    key_locks: dict[Any, threading.Lock] = field(default_factory=dict)


class SessionStore:
    """LRU-plus-TTL map of session id to immutable framework."""

    def __init__(self, max_sessions: int, ttl: float):
        self.max_sessions = max_sessions
        self.ttl = ttl
        self._lock = threading.Lock()
        self._sessions: "OrderedDict[str, Session]" = OrderedDict()
        self._evicted: set[str] = set()  # ids we once held; bounded by upload count

    def create(self, framework: Framework) -> Session:
        now = time.monotonic()
        session = Session(
            id=uuid.uuid4().hex, framework=framework, created_at=now, last_used=now
        )
        with self._lock:
            self._sweep(now)
            self._sessions[session.id] = session
            while len(self._sessions) > self.max_sessions:
                old_id, _ = self._sessions.popitem(last=False)
                self._evicted.add(old_id)
        return session

    def get(self, session_id: str) -> Session:
        now = time.monotonic()
        with self._lock:
            self._sweep(now)
            session = self._sessions.get(session_id)
            if session is None:
                if session_id in self._evicted:
                    raise ApiException(410, "gone", "session evicted or expired")
                raise ApiException(404, "no_such_framework", "unknown framework id")
            session.last_used = now
            self._sessions.move_to_end(session_id)
            return session

    def _sweep(self, now: float) -> None:
        expired = [
            sid
            for sid, session in self._sessions.items()
            if now - session.last_used > self.ttl
        ]
        for sid in expired:
            del self._sessions[sid]
            self._evicted.add(sid)


def _get_or_compute(
    store_config: ServiceConfig, session: Session, key: Any, compute: Callable[[], Any]
) -> Any:
    """Per-key at-most-once computation; concurrent callers share one run."""
    if not store_config.cache_enabled:
        return compute()
    with session.lock:
        if key in session.cache:
            return session.cache[key]
        key_lock = session.key_locks.setdefault(key, threading.Lock())
    with key_lock:
        with session.lock:
            if key in session.cache:
                return session.cache[key]
        value = compute()
        with session.lock:
            session.cache[key] = value
    return value


def _detect_format(body: str, content_type: str, fmt: Optional[str]) -> str:
    if fmt is not None:
        if fmt not in FORMATS:
            raise ApiException(400, "bad_format", f"unknown format: {fmt}")
        return fmt
    base_type = content_type.split(";")[0].strip().lower()
    if base_type == "application/json":
        return "json"
    if base_type.endswith("apx"):
        return "apx"
    if base_type.endswith("tgf"):
        return "tgf"
    for line in body.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        if stripped.startswith("{"):
            return "json"
        if stripped.startswith("arg(") or stripped.startswith("att("):
            return "apx"
        return "tgf"
    return "apx"


def _parse_suspend_body(document: Any, framework: Framework) -> list[Attack]:
    if not isinstance(document, dict) or set(document) - {"suspend"}:
        raise ApiException(400, "bad_request", 'body must be {"suspend": [[x, y], ...]}')
    pairs = document.get("suspend", [])
    if not isinstance(pairs, list):
        raise ApiException(400, "bad_request", '"suspend" must be a list of pairs')
    attacks = []
    for pair in pairs:
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(end, str) for end in pair)
        ):
            raise ApiException(400, "bad_request", f"not an attack pair: {pair!r}")
        attack = Attack(pair[0], pair[1])
        if attack not in framework.attack_set:
            raise ApiException(
                400, "unknown_attack", f"no such attack: ({pair[0]}, {pair[1]})"
            )
        attacks.append(attack)
    return attacks


def create_app(config: ServiceConfig = ServiceConfig()) -> FastAPI:
    app = FastAPI(title="aflens", docs_url=None, redoc_url=None)
    store = SessionStore(config.max_sessions, config.session_ttl)
    app.state.store = store
    app.state.config = config

    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ApiException)
    async def on_api_exception(request: Request, exc: ApiException):
        return _api_error(exc.status, exc.code, exc.message)

    @app.exception_handler(StarletteHTTPException)
    async def on_http_exception(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "http_error"
        return _api_error(exc.status_code, code, str(exc.detail))

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        message = str(errors[0].get("msg", "invalid request")) if errors else "invalid request"
        return _api_error(400, "bad_request", message)

    def cached(session: Session, key: Any, compute: Callable[[], Any]) -> Any:
        return _get_or_compute(config, session, key, compute)

    def base_of(session: Session):
        return cached(session, "grounded", lambda: grounded(session.framework))

    def stable_of(session: Session):
        return cached(
            session,
            "stable",
            lambda: enumerate_labellings(session.framework, Semantics.STABLE),
        )

    def stable_solution(session: Session, index: int) -> dict:
        solutions = stable_of(session).solutions
        if not 0 <= index < len(solutions):
            raise ApiException(
                404,
                "no_such_solution",
                f"solution index {index} out of range ({len(solutions)} stable solutions)",
            )
        return solutions[index]

    def explanation_of(
        session: Session, index: int, candidates: str, bounds: SearchBounds,
        should_cancel: Optional[Callable[[], bool]] = None,
    ):
        target = stable_solution(session, index)
        key = ("explanation", index, candidates, bounds)
        return cached(
            session,
            key,
            lambda: explain_solution(
                session.framework,
                base_of(session),
                target,
                index,
                bounds=bounds,
                candidates=candidates,
                should_cancel=should_cancel,
            ),
        )

    def search_bounds(max_delta: int, max_tests: int, max_results: int) -> SearchBounds:
        if max_delta < 0 or max_tests < 1 or max_results < 1:
            raise ApiException(400, "bad_request", "search bounds must be positive")
        return SearchBounds(
            max_cardinality=max_delta, max_tests=max_tests, max_results=max_results
        )

    @app.post("/frameworks", status_code=201)
    async def create_framework(request: Request, format: Optional[str] = None):
        body = await request.body()
        if len(body) > config.max_body_bytes:
            raise ApiException(413, "too_large", "request body exceeds size limit")
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ApiException(400, "bad_encoding", "body is not valid UTF-8") from exc
        fmt = _detect_format(text, request.headers.get("content-type", ""), format)
        try:
            framework = parse(text, fmt)
        except FrameworkTooLarge as exc:
            raise ApiException(413, "too_large", str(exc)) from exc
        except ParseError as exc:
            raise ApiException(400, "parse_error", str(exc)) from exc
        session = store.create(framework)
        return {"id": session.id}

    @app.get("/healthz")
    async def healthz():
        return PlainTextResponse("ok")

    @app.get("/frameworks/{session_id}/grounded")
    def get_grounded(session_id: str):
        session = store.get(session_id)
        result = base_of(session)
        return JSONResponse(grounded_document(result))

    @app.get("/frameworks/{session_id}/solutions")
    def get_solutions(session_id: str, semantics: str = "stable"):
        session = store.get(session_id)
        try:
            wanted = Semantics(semantics)
        except ValueError as exc:
            raise ApiException(
                400, "bad_semantics", f"unknown semantics: {semantics}"
            ) from exc
        solutions = cached(
            session,
            ("solutions", wanted),
            lambda: enumerate_labellings(session.framework, wanted),
        )
        return JSONResponse(solution_set_document(solutions))

    @app.get("/frameworks/{session_id}/solutions/{index}/explanation")
    async def get_explanation(
        session_id: str,
        index: int,
        request: Request,
        candidates: str = "failing",
        maxDelta: int = SearchBounds.max_cardinality,
        maxTests: int = SearchBounds.max_tests,
        maxResults: int = SearchBounds.max_results,
    ):
        session = store.get(session_id)
        if candidates not in ("failing", "all-undec"):
            raise ApiException(400, "bad_request", f"unknown candidate mode: {candidates}")
        bounds = search_bounds(maxDelta, maxTests, maxResults)
        cancel = threading.Event()

        def compute():
            return explanation_of(
                session, index, candidates, bounds, should_cancel=cancel.is_set
            )

        loop = asyncio.get_running_loop()
        future = loop.run_in_executor(None, compute)
        # Poll for client disconnect so a long search can stop mid-way.
        while True:
            done, _ = await asyncio.wait({future}, timeout=0.05)
            if done:
                break
            if await request.is_disconnected():
                cancel.set()
        try:
            explanation = future.result()
        except SearchCancelled:
            return _api_error(499, "cancelled", "client closed the connection")
        return JSONResponse(explanation_document(explanation))

    def overlay_edges(session: Session, index: int, delta: int) -> tuple[Attack, ...]:
        explanation = explanation_of(
            session, index, "failing", SearchBounds()
        )
        sets = explanation.critical_sets
        if not 0 <= delta < len(sets):
            raise ApiException(
                404,
                "no_such_delta",
                f"critical set index {delta} out of range ({len(sets)} sets)",
            )
        return sets[delta].edges

    def view_for(
        session: Session, solution: Optional[int], delta: Optional[int]
    ) -> layout_mod.View:
        framework = session.framework
        base = base_of(session)
        if solution is None:
            if delta is not None:
                raise ApiException(400, "bad_request", "delta requires solution")
            return layout_mod.base_view(framework, base)
        target = stable_solution(session, solution)
        if delta is None:
            return layout_mod.overlay_view(framework, base, target)
        edges = overlay_edges(session, solution, delta)
        return layout_mod.suspension_view(framework, base, edges)

    @app.get("/frameworks/{session_id}/layout")
    def get_layout(
        session_id: str, solution: Optional[int] = None, delta: Optional[int] = None
    ):
        session = store.get(session_id)
        document = cached(
            session,
            ("layout", solution, delta),
            lambda: layout_mod.layout_document(view_for(session, solution, delta)),
        )
        return JSONResponse(document)

    @app.post("/frameworks/{session_id}/what-if")
    async def post_what_if(session_id: str, request: Request):
        session = store.get(session_id)
        try:
            body = await request.json()
        except Exception as exc:
            raise ApiException(400, "bad_request", "body is not valid JSON") from exc
        attacks = _parse_suspend_body(body, session.framework)
        document = cached(
            session,
            ("what-if", tuple(attacks)),
            lambda: layout_mod.layout_document(
                layout_mod.suspension_view(session.framework, base_of(session), attacks)
            ),
        )
        return JSONResponse(document)

    @app.get("/frameworks/{session_id}/export")
    def get_export(
        session_id: str,
        format: str = "json",
        solution: Optional[int] = None,
        delta: Optional[int] = None,
    ):
        session = store.get(session_id)
        if format in ("apx", "json"):
            # The framework itself round-trips; overlays are a dot concern.
            text = serialize(session.framework, format)
            media = "application/json" if format == "json" else "text/plain"
            return Response(text, media_type=media)
        if format == "dot":
            text = cached(
                session,
                ("dot", solution, delta),
                lambda: layout_mod.export_dot(view_for(session, solution, delta)),
            )
            return Response(text, media_type="text/vnd.graphviz")
        raise ApiException(400, "bad_format", f"unknown export format: {format}")

    return app

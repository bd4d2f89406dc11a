"""Session-oriented HTTP service.

Two request families share the engine:

* Engage -- stateful sessions. Load an environment (`POST /environments`),
  open a session (`POST /sessions`), stream observations
  (`POST /sessions/{id}/observations`) and read beliefs or a sampled
  timeline back. Every post recomputes the posterior over the full
  accumulated sequence, so a session's belief always equals a from-scratch
  computation.
* Orchestrate -- stateless planning calls (`POST /plan`, `/topk`,
  `/explain`) whose payloads carry raw PDDL text and whose responses are
  visualization documents.

Sessions live in memory behind a per-session lock (single writer,
concurrent readers); an optional JSONL event log per session enables
offline replay. The ``XAIP_BUDGET`` environment variable caps the
explanation search's planner calls.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import vizdoc
from .envconfig import EnvironmentConfig, load_environment_config
from .errors import (
    BudgetExceededError,
    EmptySessionError,
    PlanNotOptimalError,
    UnknownActionError,
    UnknownSessionError,
    XaiplanError,
)
from .model import extract_causal_links, ground, make_plan, validate_plan
from .pddl import parse_domain, parse_problem
from .recognition import BeliefState, ObservationSequence, goal_posterior
from .reconcile import DEFAULT_BUDGET, relevance
from .search import solve_optimal, solve_satisficing
from .topk import top_k


def now_ms() -> int:
    return int(time.time() * 1000)


def explanation_budget() -> int:
    raw = os.environ.get("XAIP_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


@dataclass
class Session:
    id: str
    environment: EnvironmentConfig
    created_at: int
    observations: ObservationSequence = ObservationSequence()
    belief: BeliefState | None = None
    snapshots: list[dict] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    log_path: Path | None = None

    def append_log(self, record: dict) -> None:
        if self.log_path is not None:
            with self.log_path.open("a") as fh:
                fh.write(json.dumps(record) + "\n")


class ServiceState:
    """In-memory environment and session stores."""

    def __init__(self, log_dir: Path | str | None = None,
                 config_dir: Path | str | None = None):
        self.environments: dict[str, EnvironmentConfig] = {}
        self.sessions: dict[str, Session] = {}
        self.log_dir = Path(log_dir) if log_dir else None
        self.config_dir = Path(config_dir) if config_dir else Path(".")
        self._store_lock = threading.Lock()

    def add_environment(self, env: EnvironmentConfig) -> None:
        with self._store_lock:
            self.environments[env.name] = env

    def environment(self, name: str) -> EnvironmentConfig:
        try:
            return self.environments[name]
        except KeyError:
            raise ValueError(f"unknown environment {name!r}") from None

    def create_session(self, env: EnvironmentConfig) -> Session:
        sid = uuid.uuid4().hex[:12]
        created = now_ms()
        belief = goal_posterior(env.hypothesis_set, ObservationSequence(),
                                env.recognition)
        session = Session(id=sid, environment=env, created_at=created,
                          belief=belief)
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)
            session.log_path = self.log_dir / f"{sid}.jsonl"
        session.snapshots.append(vizdoc.snapshot_beliefs(belief, created))
        with self._store_lock:
            self.sessions[sid] = session
        return session

    def session(self, sid: str) -> Session:
        try:
            return self.sessions[sid]
        except KeyError:
            raise UnknownSessionError(f"no session {sid!r}") from None


def replay_log(env: EnvironmentConfig, path: Path | str) -> BeliefState:
    """Recompute the belief a logged session ended with."""
    observations = ObservationSequence()
    for line in Path(path).read_text().splitlines():
        record = json.loads(line)
        observations = observations.extended(record["action"], record.get("t"))
    return goal_posterior(env.hypothesis_set, observations, env.recognition)


def _error_response(exc: Exception) -> JSONResponse:
    kind = type(exc).__name__
    if isinstance(exc, UnknownSessionError):
        status = 404
    elif isinstance(exc, PlanNotOptimalError):
        status = 422
    elif isinstance(exc, BudgetExceededError):
        status = 503
    elif isinstance(exc, EmptySessionError):
        status = 409
    else:
        status = 400
    return JSONResponse(status_code=status,
                        content={"error": kind, "detail": str(exc)})


def _parse_payload_task(payload: dict):
    if "domain" not in payload or "problem" not in payload:
        raise ValueError("payload requires 'domain' and 'problem' PDDL text fields")
    dm = parse_domain(payload["domain"])
    pi = parse_problem(payload["problem"], dm)
    return ground(dm, pi)


def _plan_graph(task, plan, relevance_report=None):
    links = extract_causal_links(task, plan)
    return vizdoc.build_plan_graph(task, plan, links, relevance=relevance_report)


def create_app(state: ServiceState | None = None) -> FastAPI:
    state = state or ServiceState()
    app = FastAPI(title="xaiplan", version="0.1.0")
    app.state.engine = state
    # the dashboard is served from its own origin and polls this API
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(XaiplanError)
    async def handle_engine_errors(request: Request, exc: XaiplanError):
        return _error_response(exc)

    @app.exception_handler(ValueError)
    async def handle_value_errors(request: Request, exc: ValueError):
        return _error_response(exc)

    # malformed bodies and query parameters are client errors, not 422s
    @app.exception_handler(RequestValidationError)
    async def handle_request_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={
            "error": "RequestValidationError", "detail": str(exc.errors())})

    # -- Engage -----------------------------------------------------------

    @app.post("/environments")
    def post_environment(payload: dict):
        if "xml" not in payload:
            raise ValueError("payload requires an 'xml' field")
        env = load_environment_config(payload["xml"], base_dir=state.config_dir)
        state.add_environment(env)
        return {"environment": env.name, "hypotheses": len(env.hypotheses)}

    @app.post("/sessions")
    def post_session(payload: dict):
        env = state.environment(payload.get("environment", ""))
        session = state.create_session(env)
        return {"session": session.id, "snapshot": session.snapshots[-1]}

    @app.post("/sessions/{sid}/observations")
    def post_observation(sid: str, payload: dict):
        session = state.session(sid)
        if "action" not in payload:
            raise ValueError("observation requires an 'action' field")
        label = payload["action"]
        t = payload.get("t")
        if t is None:
            t = now_ms()
        if not isinstance(t, int):
            raise ValueError("'t' must be epoch milliseconds")
        env = session.environment
        if label not in env.hypothesis_set.action_labels:
            raise UnknownActionError(
                f"no action labelled {label!r} in environment {env.name!r}")
        with session.lock:
            last_t = session.snapshots[-1]["timestamp"]
            if t < last_t:
                raise ValueError(
                    f"timestamp {t} precedes the latest snapshot ({last_t})")
            extended = session.observations.extended(label, t)
            belief = goal_posterior(env.hypothesis_set, extended, env.recognition)
            session.observations = extended
            session.belief = belief
            snapshot = vizdoc.snapshot_beliefs(belief, t)
            session.snapshots.append(snapshot)
            session.append_log({"t": t, "action": label})
        return snapshot

    @app.get("/sessions/{sid}/beliefs")
    def get_beliefs(sid: str):
        return state.session(sid).snapshots[-1]

    @app.get("/sessions/{sid}/timeline")
    def get_timeline(sid: str, interval: float = Query(1.0, gt=0)):
        session = state.session(sid)
        with session.lock:
            snapshots = list(session.snapshots)
        return vizdoc.sample_timeline(snapshots, int(interval * 1000), session.id)

    # -- Orchestrate ---------------------------------------------------------

    @app.post("/plan")
    def post_plan(payload: dict):
        task = _parse_payload_task(payload)
        mode = payload.get("mode", "optimal")
        if mode == "optimal":
            result = solve_optimal(task)
        elif mode == "satisficing":
            result = solve_satisficing(task)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if result.plan is None:
            return JSONResponse(status_code=422, content={
                "error": "Unsolvable", "detail": "no plan achieves the goal"})
        return _plan_graph(task, result.plan)

    @app.post("/topk")
    def post_topk(payload: dict, k: int = Query(..., ge=1)):
        task = _parse_payload_task(payload)
        result = top_k(task, k)
        graphs = [_plan_graph(task, plan) for plan in result.plans]
        return vizdoc.build_topk_doc(result, graphs)

    @app.post("/explain")
    def post_explain(payload: dict):
        task = _parse_payload_task(payload)
        if payload.get("plan"):
            plan = make_plan(task, payload["plan"])
            report = validate_plan(task, plan)
            if not report.valid:
                raise PlanNotOptimalError(
                    f"supplied plan fails at step {report.failure_step}")
        else:
            result = solve_optimal(task)
            if result.plan is None:
                return JSONResponse(status_code=422, content={
                    "error": "Unsolvable", "detail": "no plan achieves the goal"})
            plan = result.plan
        report = relevance(task, plan, budget=explanation_budget())
        return _plan_graph(task, plan, relevance_report=report)

    return app

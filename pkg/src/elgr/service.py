"""HTTP session API for interactive, human-steered repair.

Sessions live in memory behind per-session locks; every mutation can be
snapshotted to a state directory as JSON. The engineer sees the current
justifications, asks for candidate replacements of a chosen axiom (the
maximally strong weakenings plus the tautology fallback, or raw one-step
successors), applies a choice, and iterates until the session reports the
ontology repaired. ``auto`` finishes a session with an automated strategy.

All responses are JSON except the plain-text ontology export; errors carry
``{"error": ..., "detail": ...}``.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse

from .axioms import Axiom, Ontology
from .errors import (
    ElParseError,
    ElgrError,
    NotEntailedError,
    SearchBudgetExceededError,
    StaticEntailsError,
)
from .justifications import Justification, all_justifications, find_one_justification
from .parser import parse_axiom, parse_ontology
from .reasoner import EntailmentContext, is_tautology
from .render import render_body, render_ontology
from .repair import (
    Iteration,
    MaxStrongStrategy,
    OracleStrategy,
    RepairProblem,
    RepairTrace,
    Replacement,
    Strategy,
    TautologyStrategy,
    _canonical_hitting_set,
    _validated_proposal,
)
from .weakening import (
    WeakeningContext,
    max_strong_weakenings,
    relation_by_kind,
    tautology_for,
)

__all__ = ["create_app"]


@dataclass
class _Session:
    id: str
    problem: RepairProblem
    algorithm: str  # "gentle" | "modified"
    weakening: str  # "sub" | "syn"
    current: Ontology
    trace: RepairTrace
    status: str = "awaiting_choice"  # awaiting_choice | repaired | failed
    justifications: tuple[Justification, ...] = ()
    hitting_set: tuple[Axiom, ...] = ()
    pending: list[str] = field(default_factory=list)
    replacements: list[Replacement] = field(default_factory=list)
    warning: Optional[str] = None
    lock: threading.RLock = field(default_factory=threading.RLock)

    # -- iteration machinery -------------------------------------------

    def begin_iteration(self) -> None:
        self.replacements = []
        self.warning = None
        if not EntailmentContext(self.current.axioms).entails(self.problem.target):
            self.status = "repaired"
            self.trace.final_ontology = self.current
            self.justifications = ()
            self.hitting_set = ()
            self.pending = []
            return
        if self.algorithm == "modified":
            just = find_one_justification(self.current, self.problem.target)
            self.justifications = (just,)
            self.hitting_set = ()
            self.pending = list(just.labels)
        else:
            justs = all_justifications(self.current, self.problem.target)
            self.justifications = justs
            self.hitting_set = _canonical_hitting_set(justs)
            self.pending = [a.label for a in self.hitting_set]
        self.status = "awaiting_choice"

    def choosable_labels(self) -> tuple[str, ...]:
        if self.algorithm == "modified":
            return self.justifications[0].labels if self.justifications else ()
        return tuple(self.pending)

    def context_for(self, label: str) -> WeakeningContext:
        containing = [
            j
            for j in self.justifications
            if any(a.label == label for a in j.axioms)
        ]
        rests = [
            tuple(a for a in j.sorted_axioms if a.label != label)
            for j in containing
        ]
        return WeakeningContext(
            self.current.static,
            rests[0],
            self.problem.target,
            extra_rests=rests[1:],
        )

    def apply_replacement(self, axiom: Axiom, body) -> None:
        self.current = self.current.replace_refutable(axiom.label, body)
        self.replacements.append(
            Replacement(axiom.label, render_body(axiom), render_body(body))
        )
        if self.algorithm == "modified":
            # one replacement finishes the iteration
            self.pending = []
        elif axiom.label in self.pending:
            self.pending.remove(axiom.label)
        if not self.pending:
            entailed_after = EntailmentContext(self.current.axioms).entails(
                self.problem.target
            )
            self.trace.iterations.append(
                Iteration(
                    justifications=tuple(j.labels for j in self.justifications),
                    hitting_set=(
                        tuple(a.label for a in self.hitting_set)
                        if self.algorithm == "gentle"
                        else tuple(r.label for r in self.replacements)
                    ),
                    replacements=tuple(self.replacements),
                    entailed_after=entailed_after,
                )
            )
            self.begin_iteration()

    def summary(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "algorithm": self.algorithm,
            "weakening": self.weakening,
            "target": render_body(self.problem.target),
            "ontology": {
                "static": [
                    {"label": a.label, "text": render_body(a)}
                    for a in self.current.static
                ],
                "refutable": [
                    {"label": a.label, "text": render_body(a)}
                    for a in self.current.refutable
                ],
            },
            "justifications": [list(j.labels) for j in self.justifications],
            "hitting_set": (
                [a.label for a in self.hitting_set]
                if self.algorithm == "gentle"
                else None
            ),
            "pending": list(self.pending),
            "choosable": list(self.choosable_labels()),
            "iteration_count": self.trace.iteration_count,
            "warning": self.warning,
        }


def _error(status: int, error: str, detail: str, **extra) -> JSONResponse:
    payload = {"error": error, "detail": detail}
    payload.update(extra)
    return JSONResponse(status_code=status, content=payload)


def create_app(
    state_dir: str | None = None,
    ui_dir: str | None = None,
    search_budget: int | None = None,
) -> FastAPI:
    """Build the session service; see the module docstring for the API."""
    app = FastAPI(title="elgr repair sessions")
    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()
    snapshot_path = Path(state_dir) if state_dir else None
    if snapshot_path:
        snapshot_path.mkdir(parents=True, exist_ok=True)

    def snapshot(session: _Session) -> None:
        if snapshot_path is None:
            return
        data = {
            "session": session.summary(),
            "ontology_text": render_ontology(session.current),
            "trace": session.trace.to_dict(),
        }
        (snapshot_path / f"{session.id}.json").write_text(
            json.dumps(data, indent=2), encoding="utf-8"
        )

    def get_session(session_id: str) -> _Session | None:
        with registry_lock:
            return sessions.get(session_id)

    @app.post("/api/sessions")
    def create_session(payload: dict) -> JSONResponse:
        ontology_text = payload.get("ontology", "")
        query_text = payload.get("query", "")
        algorithm = payload.get("algorithm", "modified")
        weakening = payload.get("weakening", "syn")
        if algorithm not in ("gentle", "modified"):
            return _error(400, "bad-request", f"unknown algorithm {algorithm!r}")
        try:
            relation_by_kind(weakening)
        except ValueError as exc:
            return _error(400, "bad-request", str(exc))
        try:
            ontology = parse_ontology(ontology_text)
            target = parse_axiom(query_text)
        except ElParseError as exc:
            return _error(400, "parse-error", str(exc))
        problem = RepairProblem(ontology, target)
        try:
            problem.validate()
        except StaticEntailsError as exc:
            return _error(422, "static-entails", str(exc))
        except NotEntailedError as exc:
            return _error(422, "not-entailed", str(exc))
        session = _Session(
            id=uuid.uuid4().hex[:12],
            problem=problem,
            algorithm=algorithm,
            weakening=weakening,
            current=ontology,
            trace=RepairTrace(algorithm=algorithm, weakening=weakening),
        )
        session.begin_iteration()
        with registry_lock:
            sessions[session.id] = session
        snapshot(session)
        return JSONResponse(status_code=201, content=session.summary())

    @app.get("/api/sessions/{session_id}")
    def get_state(session_id: str):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        with session.lock:
            return session.summary()

    @app.get("/api/sessions/{session_id}/justifications")
    def get_justifications(session_id: str):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        with session.lock:
            return {
                "justifications": [
                    [
                        {"label": a.label, "text": render_body(a)}
                        for a in j.sorted_axioms
                    ]
                    for j in session.justifications
                ]
            }

    @app.get("/api/sessions/{session_id}/candidates")
    def get_candidates(session_id: str, axiom: str = "", mode: str = ""):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        with session.lock:
            if session.status != "awaiting_choice":
                return _error(409, "wrong-status", f"session is {session.status}")
            if axiom not in session.choosable_labels():
                return _error(
                    404,
                    "unknown-axiom",
                    f"axiom {axiom!r} is not up for weakening",
                )
            beta = session.current.refutable_by_label(axiom)
            ctx = session.context_for(axiom)
            relation = relation_by_kind(session.weakening)
            warning = None

            def one_step() -> list[Axiom]:
                nonlocal warning
                try:
                    return list(relation.one_step_successors(beta, search_budget))
                except SearchBudgetExceededError:
                    warning = (
                        (warning or "")
                        + " one-step enumeration also exceeded the budget; "
                        "only the tautology is offered"
                    ).strip()
                    return []

            if mode == "one-step":
                options = one_step()
            else:
                try:
                    options = list(
                        max_strong_weakenings(relation, ctx, beta, search_budget)
                    )
                except SearchBudgetExceededError:
                    warning = (
                        "search budget exhausted; showing one-step "
                        "successors instead of maximally strong weakenings"
                    )
                    options = one_step()
            fallback = Axiom(beta.label, tautology_for(beta))
            texts = {render_body(a.body) for a in options}
            if render_body(fallback.body) not in texts:
                options.append(fallback)
            candidates = [
                {
                    "text": render_body(a.body),
                    "is_tautology": is_tautology(a.body),
                    "satisfies_condition": ctx.condition_holds(a.body),
                }
                for a in options
            ]
            return {"axiom": axiom, "candidates": candidates, "warning": warning}

    @app.post("/api/sessions/{session_id}/apply")
    def apply_choice(session_id: str, payload: dict):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        with session.lock:
            if session.status != "awaiting_choice":
                return _error(409, "wrong-status", f"session is {session.status}")
            label = payload.get("axiom", "")
            replacement_text = payload.get("replacement", "")
            if label not in session.choosable_labels():
                return _error(
                    404,
                    "unknown-axiom",
                    f"axiom {label!r} is not up for weakening",
                )
            try:
                replacement = parse_axiom(replacement_text)
            except ElParseError as exc:
                return _error(400, "parse-error", str(exc))
            beta = session.current.refutable_by_label(label)
            relation = relation_by_kind(session.weakening)
            if not is_tautology(replacement) and not relation.is_weaker(
                beta.body, replacement
            ):
                return _error(
                    409,
                    "not-weaker",
                    f"replacement is not weaker than {label} under the "
                    f"{session.weakening} relation",
                )
            ctx = session.context_for(label)
            if not ctx.condition_holds(replacement):
                failing = next(
                    j.labels
                    for j in session.justifications
                    if any(a.label == label for a in j.axioms)
                )
                return _error(
                    409,
                    "condition-violated",
                    "the replacement still entails the target within a "
                    "justification containing the axiom",
                    justification=list(failing),
                )
            session.apply_replacement(beta, replacement)
            snapshot(session)
            return session.summary()

    @app.post("/api/sessions/{session_id}/auto")
    def auto_run(session_id: str, payload: dict):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        with session.lock:
            if session.status != "awaiting_choice":
                return _error(409, "wrong-status", f"session is {session.status}")
            name = payload.get("strategy", "max-strong")
            relation = relation_by_kind(session.weakening)
            strategy: Strategy
            if name == "tautology":
                strategy = TautologyStrategy()
            elif name == "oracle":
                strategy = OracleStrategy(relation, search_budget)
            elif name == "max-strong":
                strategy = MaxStrongStrategy(relation, search_budget)
            else:
                return _error(400, "bad-request", f"unknown strategy {name!r}")
            try:
                while session.status == "awaiting_choice":
                    label = (
                        strategy.choose_axiom(session.justifications[0]).label
                        if session.algorithm == "modified"
                        else session.pending[0]
                    )
                    beta = session.current.refutable_by_label(label)
                    ctx = session.context_for(label)
                    gamma = _validated_proposal(strategy, ctx, beta, relation)
                    session.apply_replacement(beta, gamma)
            except (ElgrError,) as exc:
                session.status = "failed"
                session.warning = str(exc)
            snapshot(session)
            return session.summary()

    @app.get("/api/sessions/{session_id}/export")
    def export(session_id: str):
        session = get_session(session_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        with session.lock:
            return PlainTextResponse(render_ontology(session.current))

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app

"""Session-oriented JSON-over-HTTP service exposing the engine.

Sessions are in-memory with optional JSON snapshot persistence
(SEMCLOUD_SESSION_DIR) and TTL eviction after 24h idle. Per-session mutations
are serialized with a lock; reads across sessions run concurrently.

Environment configuration: SEMCLOUD_SESSION_DIR, SEMCLOUD_DEFAULT_K,
SEMCLOUD_DEFAULT_SIGMA, SEMCLOUD_DEFAULT_THETA, SEMCLOUD_PORT (used by the
CLI serve command).
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from fastapi import Body, FastAPI, HTTPException
from pydantic import BaseModel

from . import guides, metrics
from .errors import EmptyHistory, EmptyInput, UnknownState, UnknownTerm
from .graph import build_graph, graph_to_dict
from .layout import ForceConfig, Layout, layout_to_dict, mds_initialize, settle
from .session import EditSession, InteractionConfig
from .textpipe import (
    DEFAULT_K,
    DEFAULT_MAX_FONT,
    DEFAULT_MIN_FONT,
    build_terms,
)

SESSION_TTL_SECONDS = 24 * 3600

MUTATIONS = frozenset(
    {"move", "move_with_neighbors", "fill_holes", "undo", "save_state", "load_state"}
)


class CreateCloudBody(BaseModel):
    text: str
    k: int | None = None
    sigma: float | None = None
    min_font: float | None = None
    max_font: float | None = None
    seed: int | None = None


class ActionBody(BaseModel):
    action: str
    params: dict = {}


@dataclass
class SessionEntry:
    session: EditSession
    mds_layout: Layout
    created_at: float
    last_access: float
    lock: threading.Lock = field(default_factory=threading.Lock)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    return float(raw) if raw else default


def create_app() -> FastAPI:
    app = FastAPI(title="semcloud")
    sessions: dict[str, SessionEntry] = {}
    store_lock = threading.Lock()
    session_dir = os.environ.get("SEMCLOUD_SESSION_DIR") or None

    default_k = _env_int("SEMCLOUD_DEFAULT_K", DEFAULT_K)
    default_sigma = _env_float("SEMCLOUD_DEFAULT_SIGMA", 0.0)
    default_theta = _env_float("SEMCLOUD_DEFAULT_THETA", 0.1)

    def _evict_stale() -> None:
        now = time.time()
        with store_lock:
            stale = [
                sid for sid, e in sessions.items()
                if now - e.last_access > SESSION_TTL_SECONDS
            ]
            for sid in stale:
                del sessions[sid]

    def _entry(session_id: str) -> SessionEntry:
        _evict_stale()
        entry = sessions.get(session_id)
        if entry is None:
            raise HTTPException(status_code=404, detail="unknown session")
        entry.last_access = time.time()
        return entry

    def _persist(session_id: str, entry: SessionEntry) -> None:
        if not session_dir:
            return
        path = Path(session_dir)
        path.mkdir(parents=True, exist_ok=True)
        (path / f"{session_id}.json").write_text(
            json.dumps(entry.session.export_state()), "utf-8"
        )

    def _mutation_response(entry: SessionEntry) -> dict:
        session = entry.session
        previous = session.previous()
        return {
            "layout": layout_to_dict(session.graph, session.current),
            "metrics": session.metrics().to_dict(),
            "previous_metrics": (
                metrics.report(session.graph, previous).to_dict()
                if previous is not None
                else None
            ),
            "best": {name: value for name, (value, _) in session.best.items()},
        }

    @app.post("/clouds")
    def create_cloud_endpoint(body: CreateCloudBody) -> dict:
        if not body.text.strip():
            raise HTTPException(status_code=400, detail="empty input text")
        k = body.k if body.k is not None else default_k
        if k < 1:
            raise HTTPException(status_code=400, detail="k must be >= 1")
        sigma = body.sigma if body.sigma is not None else default_sigma
        try:
            terms, index = build_terms(
                body.text,
                k=k,
                min_font=body.min_font if body.min_font is not None else DEFAULT_MIN_FONT,
                max_font=body.max_font if body.max_font is not None else DEFAULT_MAX_FONT,
            )
        except EmptyInput as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if len(terms) < 2:
            raise HTTPException(status_code=422, detail="fewer than 2 terms survive")

        graph = build_graph(terms, index, sigma=sigma)
        config = ForceConfig(rng_seed=body.seed if body.seed is not None else 0)
        mds_layout = mds_initialize(graph, seed=config.rng_seed)
        layout = settle(graph, mds_layout, config)
        session = EditSession(
            graph,
            layout,
            force_config=config,
            config=InteractionConfig(theta=default_theta),
        )
        session_id = uuid.uuid4().hex
        entry = SessionEntry(
            session=session,
            mds_layout=mds_layout,
            created_at=time.time(),
            last_access=time.time(),
        )
        with store_lock:
            sessions[session_id] = entry
        _persist(session_id, entry)
        return {
            "session_id": session_id,
            "graph": graph_to_dict(graph),
            "layout": layout_to_dict(graph, layout),
            "metrics": session.metrics().to_dict(),
        }

    @app.post("/sessions/{session_id}/actions")
    def mutate(session_id: str, body: ActionBody) -> dict:
        entry = _entry(session_id)
        if body.action not in MUTATIONS:
            raise HTTPException(status_code=400, detail=f"unknown action {body.action!r}")
        session = entry.session
        params = body.params
        with entry.lock:
            try:
                if body.action == "move":
                    session.move_word(int(params["word"]), (float(params["x"]), float(params["y"])))
                elif body.action == "move_with_neighbors":
                    session.move_with_neighbors(
                        int(params["word"]), (float(params["x"]), float(params["y"]))
                    )
                elif body.action == "fill_holes":
                    session.fill_holes()
                elif body.action == "undo":
                    session.undo()
                elif body.action == "save_state":
                    session.save_state(str(params["name"]))
                elif body.action == "load_state":
                    session.load_state(str(params["name"]))
            except EmptyHistory as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            except (UnknownTerm, UnknownState, KeyError, ValueError, TypeError) as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            response = _mutation_response(entry)
        _persist(session_id, entry)
        return response

    @app.get("/sessions/{session_id}/layout")
    def get_layout(session_id: str) -> dict:
        entry = _entry(session_id)
        return layout_to_dict(entry.session.graph, entry.session.current)

    @app.get("/sessions/{session_id}/metrics")
    def get_metrics(session_id: str) -> dict:
        entry = _entry(session_id)
        session = entry.session
        previous = session.previous()
        return {
            "current": session.metrics().to_dict(),
            "previous": (
                metrics.report(session.graph, previous).to_dict()
                if previous is not None
                else None
            ),
            "best": {name: value for name, (value, _) in session.best.items()},
        }

    @app.get("/sessions/{session_id}/guides/{guide_name}")
    def get_guide(
        session_id: str,
        guide_name: str,
        focus: int | None = None,
        grid: int = guides.DEFAULT_GRID,
    ) -> dict:
        entry = _entry(session_id)
        session = entry.session
        try:
            if guide_name == "adjacency":
                return guides.adjacency_guide(session.graph, session.current, focus).to_dict()
            if guide_name == "distortion":
                if focus is None:
                    raise HTTPException(
                        status_code=400, detail="distortion guide requires focus"
                    )
                return guides.distortion_heatmap(
                    session.graph, session.current, focus, grid
                ).to_dict()
            if guide_name == "compactness":
                return guides.compactness_guide(session.current).to_dict()
        except UnknownTerm as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        raise HTTPException(status_code=404, detail=f"unknown guide {guide_name!r}")

    @app.get("/sessions/{session_id}/export")
    def export_session(session_id: str) -> dict:
        entry = _entry(session_id)
        return entry.session.export_state()

    @app.put("/sessions/{session_id}/export")
    def import_session(session_id: str, state: dict = Body(...)) -> dict:
        try:
            session = EditSession.import_state(state)
        except (KeyError, ValueError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        entry = SessionEntry(
            session=session,
            mds_layout=session.current.copy(),
            created_at=time.time(),
            last_access=time.time(),
        )
        with store_lock:
            sessions[session_id] = entry
        _persist(session_id, entry)
        return {"session_id": session_id, "metrics": session.metrics().to_dict()}

    @app.patch("/sessions/{session_id}/boxes")
    def patch_boxes(session_id: str, boxes: dict = Body(...)) -> dict:
        """Override per-term box sizes with client-measured glyph extents and
        re-run the force phase from the stored MDS placement."""
        entry = _entry(session_id)
        session = entry.session
        measured = boxes.get("boxes", boxes)
        with entry.lock:
            graph = session.graph
            terms = list(graph.terms)
            try:
                for key, box in measured.items():
                    term_id = int(key)
                    if not 0 <= term_id < graph.n:
                        raise HTTPException(status_code=400, detail=f"unknown term {term_id}")
                    terms[term_id] = replace(
                        terms[term_id],
                        box_width=float(box["w"]),
                        box_height=float(box["h"]),
                    )
            except (KeyError, ValueError, TypeError) as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc

            new_graph = replace(graph, terms=tuple(terms))
            mds_layout = entry.mds_layout.copy()
            mds_layout.widths = np.array([t.box_width for t in terms], dtype=np.float64)
            mds_layout.heights = np.array([t.box_height for t in terms], dtype=np.float64)
            layout = settle(new_graph, mds_layout, session.force_config)
            new_session = EditSession(
                new_graph, layout,
                force_config=session.force_config,
                config=session.config,
            )
            entry.session = new_session
            entry.mds_layout = mds_layout
        _persist(session_id, entry)
        return {
            "layout": layout_to_dict(new_graph, layout),
            "metrics": new_session.metrics().to_dict(),
        }

    return app


app = create_app()

"""HTTP service exposing scenarios, sessions, and transcripts.

One process owns its sessions in memory; a per-session lock turns
double-submitted turns into 409 responses instead of interleaved state.
Backend failures surface as 502 and leave the session exactly as it was.
"""

from __future__ import annotations

import threading
import uuid
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .backends import (
    BackendConfig,
    build_backend,
    bundled_backend_configs,
    load_backend_configs,
)
from .errors import (
    BackendConfigError,
    BackendError,
    EmptyInputError,
    SessionCompletedError,
    TurnLimitError,
)
from .locales import supported_locales
from .logs import TurnRecord, report_to_document
from .rendering import render_world
from .scenarios import Scenario, bundled_scenario_names, discover_scenarios, load_bundled_scenario
from .session import DEFAULT_TURN_LIMIT, Session


class CreateSessionRequest(BaseModel):
    scenario: str
    backend: Optional[str] = None
    locale: str = "en"
    strict_puzzles: bool = False
    turn_limit: int = Field(default=DEFAULT_TURN_LIMIT, ge=1, le=1000)


class TurnRequest(BaseModel):
    input: str


class _SessionSlot:
    def __init__(self, session: Session) -> None:
        self.session = session
        self.lock = threading.Lock()


def _turn_payload(record: TurnRecord, debug: bool) -> dict:
    payload = {
        "index": record.index,
        "player_input": record.player_input,
        "narration": record.narration,
        "parse_error": record.parse_error,
        "reports": [report_to_document(r) for r in record.reports],
        "completed": record.completed,
        "at": record.at,
    }
    if debug:
        payload["raw_reply"] = record.raw_reply
        payload["world_after"] = record.world_after
        payload["scene_after"] = record.scene_after
    return payload


def create_app(
    *,
    scenario_dir: Optional[Union[str, Path]] = None,
    backends_file: Optional[Union[str, Path]] = None,
    log_dir: Optional[Union[str, Path]] = None,
    ui_dir: Optional[Union[str, Path]] = None,
    debug: bool = False,
    scenarios: Optional[dict[str, Scenario]] = None,
    backend_configs: Optional[dict[str, BackendConfig]] = None,
) -> FastAPI:
    """Build the service.

    Bundled scenarios and demo backends are always available; a scenario
    directory or backends file extends (and can shadow) them. Passing
    ``scenarios`` or ``backend_configs`` directly skips the filesystem.
    """
    all_scenarios = {
        name: load_bundled_scenario(name) for name in bundled_scenario_names()
    }
    if scenario_dir is not None:
        all_scenarios.update(discover_scenarios(scenario_dir))
    if scenarios:
        all_scenarios.update(scenarios)

    all_backends = bundled_backend_configs()
    if backends_file is not None:
        all_backends.update(load_backend_configs(backends_file))
    if backend_configs:
        all_backends.update(backend_configs)

    app = FastAPI(title="storyloom", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    slots: dict[str, _SessionSlot] = {}
    registry_lock = threading.Lock()

    def _slot(session_id: str) -> _SessionSlot:
        slot = slots.get(session_id)
        if slot is None:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        return slot

    def _session_payload(session: Session) -> dict:
        return {
            "session_id": session.session_id,
            "scenario": session.scenario.name,
            "title": session.scenario.title,
            "locale": session.locale,
            "strict_puzzles": session.strict_puzzles,
            "turn_limit": session.turn_limit,
            "turn_count": session.turn_count,
            "completed": session.completed,
            "scene": session.scene,
        }

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.get("/scenarios")
    def list_scenarios() -> list[dict]:
        return [
            {
                "name": sc.name,
                "title": sc.title,
                "starting_scene": render_world(sc.world),
            }
            for sc in sorted(all_scenarios.values(), key=lambda s: s.name)
        ]

    @app.get("/backends")
    def list_backends() -> list[dict]:
        return [
            {"name": name, "kind": cfg.kind}
            for name, cfg in sorted(all_backends.items())
        ]

    @app.post("/sessions", status_code=201)
    def create_session(request: CreateSessionRequest) -> dict:
        scenario = all_scenarios.get(request.scenario)
        if scenario is None:
            raise HTTPException(
                status_code=400,
                detail=f"unknown scenario {request.scenario!r}; available: "
                + ", ".join(sorted(all_scenarios)),
            )
        backend_name = request.backend or f"{request.scenario}-demo"
        config = all_backends.get(backend_name)
        if config is None:
            raise HTTPException(
                status_code=400,
                detail=f"unknown backend {backend_name!r}; available: "
                + ", ".join(sorted(all_backends)),
            )
        if request.locale not in supported_locales():
            raise HTTPException(
                status_code=400,
                detail=f"unsupported locale {request.locale!r}; available: "
                + ", ".join(supported_locales()),
            )
        try:
            backend = build_backend(config)
        except BackendConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        session_id = uuid.uuid4().hex
        log_path = (
            Path(log_dir) / f"{session_id}.jsonl" if log_dir is not None else None
        )
        session = Session(
            scenario,
            backend,
            locale=request.locale,
            strict_puzzles=request.strict_puzzles,
            turn_limit=request.turn_limit,
            session_id=session_id,
            backend_name=backend_name,
            log_path=log_path,
        )
        with registry_lock:
            slots[session_id] = _SessionSlot(session)
        return _session_payload(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _session_payload(_slot(session_id).session)

    @app.post("/sessions/{session_id}/turns")
    def submit_turn(session_id: str, request: TurnRequest) -> dict:
        slot = _slot(session_id)
        if not slot.lock.acquire(blocking=False):
            raise HTTPException(
                status_code=409, detail="a turn is already in flight for this session"
            )
        try:
            record = slot.session.submit(request.input)
        except EmptyInputError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except SessionCompletedError as exc:
            raise HTTPException(status_code=410, detail=str(exc)) from exc
        except TurnLimitError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except BackendError as exc:
            raise HTTPException(status_code=502, detail=str(exc)) from exc
        finally:
            slot.lock.release()
        return {
            "turn": _turn_payload(record, debug),
            "scene": slot.session.scene,
            "completed": slot.session.completed,
            "turn_count": slot.session.turn_count,
        }

    @app.get("/sessions/{session_id}/transcript")
    def transcript(session_id: str, after: int = 0, limit: Optional[int] = None) -> dict:
        session = _slot(session_id).session
        return {
            "session_id": session.session_id,
            "scenario": session.scenario.name,
            "locale": session.locale,
            "turn_count": session.turn_count,
            "completed": session.completed,
            "scene": session.scene,
            "turns": [
                _turn_payload(r, debug) for r in session.transcript(after, limit)
            ],
        }

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app

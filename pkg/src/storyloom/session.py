"""Turn loop: prompt, suggest, parse, validate, apply, log.

A session owns one mutable world. Each submitted input becomes at most one
recorded turn: replies that fail to parse still record a turn (the world
just does not change), while backend failures leave no trace so the caller
can retry the same input.
"""

from __future__ import annotations

import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Union

from .backends import Backend
from .errors import ResponseParseError, SessionCompletedError, TurnLimitError
from .logs import LogWriter, TurnRecord
from .parsing import parse_response
from .rendering import build_prompt, render_world
from .scenarios import Scenario, world_to_document
from .transformations import ExecutionOptions, execute_plan
from .world import check_world, objective_met

DEFAULT_TURN_LIMIT = 50


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class Session:
    """One playthrough of a scenario against one backend."""

    def __init__(
        self,
        scenario: Scenario,
        backend: Backend,
        *,
        locale: str = "en",
        strict_puzzles: bool = False,
        turn_limit: int = DEFAULT_TURN_LIMIT,
        session_id: Optional[str] = None,
        backend_name: str = "",
        log_path: Optional[Union[str, Path]] = None,
    ) -> None:
        self.scenario = scenario
        self.backend = backend
        self.locale = locale
        self.strict_puzzles = strict_puzzles
        self.turn_limit = turn_limit
        self.session_id = session_id or uuid.uuid4().hex
        self.world = scenario.new_world()
        check_world(self.world)
        self.turns: list[TurnRecord] = []
        self._writer = LogWriter(log_path) if log_path else None
        if self._writer:
            self._writer.write_header(
                {
                    "session_id": self.session_id,
                    "scenario": scenario.name,
                    "title": scenario.title,
                    "locale": locale,
                    "backend": backend_name or type(backend).__name__,
                    "strict_puzzles": strict_puzzles,
                    "turn_limit": turn_limit,
                    "created_at": _now(),
                    "world": world_to_document(self.world),
                    "scene": self.scene,
                }
            )

    @property
    def scene(self) -> str:
        return render_world(self.world)

    @property
    def completed(self) -> bool:
        return objective_met(self.world)

    @property
    def turn_count(self) -> int:
        return len(self.turns)

    def transcript(self, after: int = 0, limit: Optional[int] = None) -> list[TurnRecord]:
        """Turns with index greater than ``after``, oldest first."""
        selected = [t for t in self.turns if t.index > after]
        return selected[:limit] if limit is not None else selected

    def submit(self, player_input: str) -> TurnRecord:
        """Run one turn.

        Raises SessionCompletedError or TurnLimitError when the session can
        no longer take turns, EmptyInputError for blank input, and lets
        backend errors propagate without recording anything.
        """
        if self.completed:
            raise SessionCompletedError("the objective is already met")
        if self.turn_count >= self.turn_limit:
            raise TurnLimitError(f"turn limit of {self.turn_limit} reached")

        prompt = build_prompt(self.world, player_input, self.locale)
        raw_reply = self.backend.complete(prompt.system, prompt.user)

        parse_error: Optional[str] = None
        narration = ""
        reports = []
        try:
            parsed = parse_response(raw_reply)
        except ResponseParseError as exc:
            parse_error = str(exc)
        else:
            narration = parsed.narration
            options = ExecutionOptions(
                strict_puzzles=self.strict_puzzles, player_input=player_input
            )
            self.world, reports = execute_plan(self.world, parsed.to_plan(), options)

        record = TurnRecord(
            index=self.turn_count + 1,
            player_input=player_input,
            raw_reply=raw_reply,
            parse_error=parse_error,
            reports=reports,
            narration=narration,
            completed=self.completed,
            world_after=world_to_document(self.world),
            scene_after=self.scene,
            at=_now(),
        )
        self.turns.append(record)
        if self._writer:
            self._writer.write_turn(record)
        return record

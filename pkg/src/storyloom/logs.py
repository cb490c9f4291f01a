"""Session logs: JSON Lines persistence and the replay oracle.

A log file holds one header line, one line per turn, and any number of
annotation lines appended later by reviewers. Every turn line carries the
full world snapshot after the turn, so a log can be audited or replayed
without the scenario file that produced it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .errors import MalformedLogError
from .rendering import render_world
from .scenarios import world_from_document, world_to_document
from .transformations import (
    ApplicationReport,
    ExecutionOptions,
    MoveItem,
    MovePlayer,
    Outcome,
    Rejection,
    Transformation,
    TurnPlan,
    UnblockLocation,
    execute_plan,
)
from .world import objective_met

SCHEMA_VERSION = 1


# -- record serialization ----------------------------------------------------


def transformation_to_document(t: Transformation) -> dict:
    if isinstance(t, MoveItem):
        return {"type": "move_item", "item": t.item, "destination": t.destination}
    if isinstance(t, UnblockLocation):
        return {"type": "unblock_location", "target": t.target}
    return {"type": "move_player", "target": t.target}


def transformation_from_document(doc: dict) -> Transformation:
    kind = doc.get("type")
    if kind == "move_item":
        return MoveItem(item=doc["item"], destination=doc["destination"])
    if kind == "unblock_location":
        return UnblockLocation(target=doc["target"])
    if kind == "move_player":
        return MovePlayer(target=doc["target"])
    raise MalformedLogError(f"unknown transformation type {kind!r}")


def report_to_document(report: ApplicationReport) -> dict:
    return {
        "transformation": transformation_to_document(report.transformation),
        "outcome": report.outcome.value,
        "reason": report.reason.value if report.reason else None,
    }


def report_from_document(doc: dict) -> ApplicationReport:
    try:
        outcome = Outcome(doc["outcome"])
        reason = Rejection(doc["reason"]) if doc.get("reason") else None
        return ApplicationReport(
            transformation=transformation_from_document(doc["transformation"]),
            outcome=outcome,
            reason=reason,
        )
    except (KeyError, ValueError, TypeError, AssertionError) as exc:
        raise MalformedLogError(f"bad report entry: {doc!r}") from exc


@dataclass
class TurnRecord:
    """Everything the engine knows about one completed turn."""

    index: int
    player_input: str
    raw_reply: str
    parse_error: Optional[str]
    reports: list[ApplicationReport]
    narration: str
    completed: bool
    world_after: dict
    scene_after: str
    at: str = ""

    def to_document(self) -> dict:
        return {
            "type": "turn",
            "index": self.index,
            "player_input": self.player_input,
            "raw_reply": self.raw_reply,
            "parse_error": self.parse_error,
            "reports": [report_to_document(r) for r in self.reports],
            "narration": self.narration,
            "completed": self.completed,
            "world_after": self.world_after,
            "scene_after": self.scene_after,
            "at": self.at,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "TurnRecord":
        try:
            return cls(
                index=int(doc["index"]),
                player_input=doc["player_input"],
                raw_reply=doc["raw_reply"],
                parse_error=doc.get("parse_error"),
                reports=[report_from_document(r) for r in doc["reports"]],
                narration=doc.get("narration", ""),
                completed=bool(doc["completed"]),
                world_after=doc["world_after"],
                scene_after=doc["scene_after"],
                at=doc.get("at", ""),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedLogError(f"bad turn line: {exc}") from exc


# -- file access ---------------------------------------------------------------


class LogWriter:
    """Append-only writer for one session's log file."""

    def __init__(self, path: Union[str, Path]) -> None:
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def _append(self, doc: dict) -> None:
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, ensure_ascii=False) + "\n")

    def write_header(self, header: dict) -> None:
        self._append({"type": "header", "schema_version": SCHEMA_VERSION, **header})

    def write_turn(self, record: TurnRecord) -> None:
        self._append(record.to_document())

    def write_annotation(
        self, turn: int, tags: list[str], note: Optional[str] = None
    ) -> None:
        doc: dict = {"type": "annotation", "turn": turn, "tags": list(tags)}
        if note:
            doc["note"] = note
        self._append(doc)


@dataclass
class SessionLog:
    """A parsed log file."""

    header: dict
    turns: list[TurnRecord]
    annotations: dict[int, dict] = field(default_factory=dict)
    path: Optional[Path] = None

    def world_before(self, index: int) -> dict:
        """World snapshot going into turn ``index`` (1-based)."""
        if index <= 1:
            return self.header["world"]
        return self.turns[index - 2].world_after


def load_log(path: Union[str, Path]) -> SessionLog:
    """Parse a session log, checking its structure.

    Later annotation lines for the same turn replace earlier ones, which is
    what makes re-annotating a turn safe.
    """
    p = Path(path)
    header: Optional[dict] = None
    turns: list[TurnRecord] = []
    annotations: dict[int, dict] = {}
    for n, line in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedLogError(f"{p}:{n}: invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise MalformedLogError(f"{p}:{n}: line is not a JSON object")
        kind = doc.get("type")
        if kind == "header":
            if header is not None:
                raise MalformedLogError(f"{p}:{n}: duplicate header")
            if doc.get("schema_version") != SCHEMA_VERSION:
                raise MalformedLogError(
                    f"{p}:{n}: unsupported schema_version {doc.get('schema_version')!r}"
                )
            header = doc
        elif kind == "turn":
            if header is None:
                raise MalformedLogError(f"{p}:{n}: turn before header")
            record = TurnRecord.from_document(doc)
            if record.index != len(turns) + 1:
                raise MalformedLogError(
                    f"{p}:{n}: turn index {record.index} out of order"
                )
            turns.append(record)
        elif kind == "annotation":
            turn = doc.get("turn")
            tags = doc.get("tags")
            if not isinstance(turn, int) or not isinstance(tags, list):
                raise MalformedLogError(f"{p}:{n}: bad annotation line")
            annotations[turn] = {"tags": tags, "note": doc.get("note")}
        else:
            raise MalformedLogError(f"{p}:{n}: unknown line type {kind!r}")
    if header is None:
        raise MalformedLogError(f"{p}: no header line")
    for turn in annotations:
        if not 1 <= turn <= len(turns):
            raise MalformedLogError(f"{p}: annotation for nonexistent turn {turn}")
    return SessionLog(header=header, turns=turns, annotations=annotations, path=p)


# -- replay oracle -------------------------------------------------------------


def _plan_from_reports(reports: list[ApplicationReport]) -> TurnPlan:
    moves = [r.transformation for r in reports if isinstance(r.transformation, MoveItem)]
    unblocks = [
        r.transformation for r in reports if isinstance(r.transformation, UnblockLocation)
    ]
    movers = [r.transformation for r in reports if isinstance(r.transformation, MovePlayer)]
    return TurnPlan(moves=moves, unblocks=unblocks, move_player=movers[0] if movers else None)


def replay_log(log: SessionLog) -> list[str]:
    """Re-execute every logged turn and report discrepancies.

    Each turn's plan is rebuilt from its reports and re-run against the
    preceding world snapshot; the outcomes, the world after, the rendered
    scene, and the completion flag must all match what was logged. An empty
    list means the log is internally consistent.
    """
    problems: list[str] = []
    options_base = ExecutionOptions(
        strict_puzzles=bool(log.header.get("strict_puzzles", False))
    )
    for record in log.turns:
        label = f"turn {record.index}"
        world = world_from_document(log.world_before(record.index))
        if record.parse_error is not None and record.reports:
            problems.append(f"{label}: has both a parse error and reports")
            continue
        options = ExecutionOptions(
            strict_puzzles=options_base.strict_puzzles,
            player_input=record.player_input,
        )
        world, reports = execute_plan(world, _plan_from_reports(record.reports), options)
        if reports != record.reports:
            problems.append(
                f"{label}: outcomes diverge: logged "
                f"{[report_to_document(r) for r in record.reports]}, replayed "
                f"{[report_to_document(r) for r in reports]}"
            )
        replayed_doc = world_to_document(world)
        if replayed_doc != record.world_after:
            problems.append(f"{label}: world snapshot diverges after replay")
        elif render_world(world) != record.scene_after:
            problems.append(f"{label}: rendered scene diverges from logged scene")
        if objective_met(world) != record.completed:
            problems.append(f"{label}: completion flag diverges")
    return problems

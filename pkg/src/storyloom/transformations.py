"""The three world-state transformations and the fixed-order plan executor.

A transformation carries raw names exactly as parsed from the model reply;
resolution against the world happens at validation time. The executor applies
a whole turn plan in a fixed order -- item moves, then unblocks, then player
movement -- validating each step against the world as already mutated by the
steps before it. A step that fails its consistency check is skipped and
reported; it never aborts the rest of the plan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from . import world as w
from .errors import StructuralViolationError


@dataclass(frozen=True)
class MoveItem:
    item: str
    destination: str


@dataclass(frozen=True)
class UnblockLocation:
    target: str


@dataclass(frozen=True)
class MovePlayer:
    target: str


Transformation = Union[MoveItem, UnblockLocation, MovePlayer]


@dataclass
class TurnPlan:
    """One turn's worth of suggested transformations.

    The reply format has a single "location changed" slot, so a plan holds at
    most one player move.
    """

    moves: list[MoveItem] = field(default_factory=list)
    unblocks: list[UnblockLocation] = field(default_factory=list)
    move_player: Optional[MovePlayer] = None

    def __len__(self) -> int:
        return len(self.moves) + len(self.unblocks) + (1 if self.move_player else 0)

    def in_execution_order(self) -> list[Transformation]:
        ordered: list[Transformation] = [*self.moves, *self.unblocks]
        if self.move_player:
            ordered.append(self.move_player)
        return ordered


class Rejection(str, Enum):
    UNKNOWN_COMPONENT = "unknown-component"
    NOT_GETTABLE = "not-gettable"
    SOURCE_MISMATCH = "source-mismatch"
    DESTINATION_UNREACHABLE = "destination-unreachable"
    NOT_BLOCKED = "not-blocked"
    ALREADY_REACHABLE = "already-reachable"
    STRUCTURAL_VIOLATION = "structural-violation"
    # Only issued by the optional strict-puzzle mode, which is off by default.
    PUZZLE_UNSOLVED = "puzzle-unsolved"


class Outcome(str, Enum):
    APPLIED = "applied"
    REJECTED = "rejected"


@dataclass
class ApplicationReport:
    transformation: Transformation
    outcome: Outcome
    reason: Optional[Rejection] = None

    def __post_init__(self) -> None:
        assert (self.reason is not None) == (self.outcome is Outcome.REJECTED)


@dataclass(frozen=True)
class ExecutionOptions:
    """Tuning knobs for the executor.

    ``strict_puzzles`` re-checks puzzle answers symbolically before an unblock:
    the player input must contain the puzzle's answer (case-insensitive).
    Off by default -- normally the model's judgment stands, wrong riddle
    answers included.
    """

    strict_puzzles: bool = False
    player_input: Optional[str] = None


def validate(
    world: w.World,
    t: Transformation,
    options: ExecutionOptions = ExecutionOptions(),
) -> Optional[Rejection]:
    """Run the consistency checks for one transformation.

    Returns ``None`` when the transformation may be applied, otherwise the
    rejection code. Never mutates the world and never raises for bad names.
    """
    if isinstance(t, MoveItem):
        return _validate_move_item(world, t)
    if isinstance(t, UnblockLocation):
        return _validate_unblock(world, t, options)
    if isinstance(t, MovePlayer):
        return _validate_move_player(world, t)
    raise TypeError(f"not a transformation: {t!r}")


def _validate_move_item(world: w.World, t: MoveItem) -> Optional[Rejection]:
    item = w.resolve_name(world, t.item)
    if not isinstance(item, w.Item):
        return Rejection.UNKNOWN_COMPONENT

    player = world.player()
    current = world.player_location()
    dest = w.resolve_name(world, t.destination)
    if dest is None:
        return Rejection.UNKNOWN_COMPONENT

    # The destination must be within reach: the player's inventory, the
    # ground here, or somebody standing here.
    dest_is_inventory = isinstance(dest, w.PlayerInventory)
    if isinstance(dest, w.Character):
        if dest.location.casefold() != current.name.casefold():
            return Rejection.DESTINATION_UNREACHABLE
        dest_is_inventory = True  # an NPC pockets what it is given
    elif isinstance(dest, w.Location):
        if dest.name.casefold() != current.name.casefold():
            return Rejection.DESTINATION_UNREACHABLE
    elif not dest_is_inventory:
        return Rejection.DESTINATION_UNREACHABLE  # items/puzzles hold nothing

    # The item must come from the player's immediate context too.
    source = w.container_of(world, item.name)
    if isinstance(source, w.Location):
        if source.name.casefold() != current.name.casefold():
            return Rejection.SOURCE_MISMATCH
    elif isinstance(source, w.Character):
        if (
            source.name.casefold() != player.name.casefold()
            and source.location.casefold() != current.name.casefold()
        ):
            return Rejection.SOURCE_MISMATCH
    else:
        return Rejection.SOURCE_MISMATCH  # obstacle slot or detached pool

    if dest_is_inventory and not item.gettable:
        return Rejection.NOT_GETTABLE
    return None


def _validate_unblock(
    world: w.World, t: UnblockLocation, options: ExecutionOptions
) -> Optional[Rejection]:
    target = w.resolve_name(world, t.target)
    if target is None or isinstance(target, w.PlayerInventory):
        return Rejection.UNKNOWN_COMPONENT
    if not isinstance(target, w.Location):
        return Rejection.NOT_BLOCKED
    current = world.player_location()
    key = target.name.casefold()
    pair = next((p for p in current.blocked if p.target.casefold() == key), None)
    if pair is None:
        if any(n.casefold() == key for n in current.connecting):
            return Rejection.ALREADY_REACHABLE
        return Rejection.NOT_BLOCKED
    if options.strict_puzzles:
        obstacle = world.find(pair.obstacle)
        if isinstance(obstacle, w.Puzzle):
            said = (options.player_input or "").casefold()
            if obstacle.answer.casefold() not in said:
                return Rejection.PUZZLE_UNSOLVED
    return None


def _validate_move_player(world: w.World, t: MovePlayer) -> Optional[Rejection]:
    target = w.resolve_name(world, t.target)
    if target is None or isinstance(target, w.PlayerInventory):
        return Rejection.UNKNOWN_COMPONENT
    if not isinstance(target, w.Location):
        return Rejection.DESTINATION_UNREACHABLE
    current = world.player_location()
    if not any(n.casefold() == target.name.casefold() for n in current.connecting):
        return Rejection.DESTINATION_UNREACHABLE
    return None


def _apply(world: w.World, t: Transformation) -> None:
    if isinstance(t, MoveItem):
        dest = w.resolve_name(world, t.destination)
        item = w.resolve_name(world, t.item)
        w.move_item(world, item.name, dest)
    elif isinstance(t, UnblockLocation):
        target = w.resolve_name(world, t.target)
        w.unblock_passage(world, world.player_location().name, target.name)
    elif isinstance(t, MovePlayer):
        target = w.resolve_name(world, t.target)
        w.set_player_location(world, target.name)


def execute_plan(
    world: w.World,
    plan: TurnPlan,
    options: ExecutionOptions = ExecutionOptions(),
) -> tuple[w.World, list[ApplicationReport]]:
    """Validate-then-apply every transformation in the fixed order.

    Item moves run first (in listed order), then unblocks, then the player
    move; each validation sees the world as mutated by the earlier steps.
    Returns the world (mutated in place) and exactly one report per
    transformation, in execution order.
    """
    reports: list[ApplicationReport] = []
    for t in plan.in_execution_order():
        reason = validate(world, t, options)
        if reason is None:
            try:
                _apply(world, t)
            except StructuralViolationError:
                reason = Rejection.STRUCTURAL_VIOLATION
        if reason is None:
            reports.append(ApplicationReport(t, Outcome.APPLIED))
        else:
            reports.append(ApplicationReport(t, Outcome.REJECTED, reason))
    return world, reports

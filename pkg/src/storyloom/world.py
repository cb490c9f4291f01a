"""Symbolic world state: typed components, queries, and primitive mutations.

The world is a plain value (dataclasses all the way down) that references
components by canonical name. Everything that changes a world goes through
the primitive mutators at the bottom of this module; they check their
preconditions before touching anything, so a failed call leaves the world
exactly as it was.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .errors import StructuralViolationError, WorldInconsistencyError

#: Reserved destination keyword naming the player's inventory.
INVENTORY_NAME = "Inventory"

#: Names that can never be used for a component (case-insensitive): they are
#: meaningful to the reply format or the renderer.
RESERVED_NAMES = frozenset({"inventory", "none", "player"})


class PlayerInventory:
    """Sentinel for the player-inventory pseudo-container."""

    def __repr__(self) -> str:
        return "<player inventory>"


PLAYER_INVENTORY = PlayerInventory()


class DetachedPool:
    """Sentinel container for items detached from an unblocked passage.

    Obstacle items stay registered in the world after their passage is
    opened, but they no longer sit in any visible container.
    """

    def __repr__(self) -> str:
        return "<detached obstacles>"


DETACHED = DetachedPool()


@dataclass
class Item:
    name: str
    descriptions: list[str] = field(default_factory=list)
    gettable: bool = False


@dataclass
class BlockedPassage:
    """A blocked exit: ``target`` is unreachable until the pair is removed.

    ``obstacle`` names any component, typically an item or a puzzle.
    """

    target: str
    obstacle: str


@dataclass
class Location:
    name: str
    descriptions: list[str] = field(default_factory=list)
    items: list[str] = field(default_factory=list)
    connecting: list[str] = field(default_factory=list)
    blocked: list[BlockedPassage] = field(default_factory=list)


@dataclass
class Character:
    name: str
    descriptions: list[str] = field(default_factory=list)
    location: str = ""
    inventory: list[str] = field(default_factory=list)


@dataclass
class Puzzle:
    name: str
    descriptions: list[str] = field(default_factory=list)
    problem: str = ""
    answer: str = ""


class ObjectiveKind(str, Enum):
    PLAYER_AT_LOCATION = "player_at_location"
    PLAYER_HAS_ITEM = "player_has_item"
    PLAYER_WITH_CHARACTER = "player_with_character"
    ITEM_AT_LOCATION = "item_at_location"


@dataclass
class Objective:
    kind: ObjectiveKind
    subject: str
    location: Optional[str] = None


Component = Union[Item, Location, Character, Puzzle]
Container = Union[Location, Character, "ObstacleSlot", PlayerInventory, DetachedPool]


@dataclass(frozen=True)
class ObstacleSlot:
    """Identifies the obstacle position of one blocked passage."""

    location: str
    target: str


@dataclass
class World:
    locations: list[Location] = field(default_factory=list)
    characters: list[Character] = field(default_factory=list)
    items: list[Item] = field(default_factory=list)
    puzzles: list[Puzzle] = field(default_factory=list)
    objective: Optional[Objective] = None
    player_name: str = ""
    detached_items: list[str] = field(default_factory=list)

    # -- lookup helpers ----------------------------------------------------

    def components(self) -> list[Component]:
        return [*self.locations, *self.characters, *self.items, *self.puzzles]

    def find(self, name: str) -> Optional[Component]:
        """Case-insensitive lookup of a component by its canonical name."""
        key = name.casefold()
        for c in self.components():
            if c.name.casefold() == key:
                return c
        return None

    def get_location(self, name: str) -> Location:
        c = self.find(name)
        if not isinstance(c, Location):
            raise WorldInconsistencyError(f"no location named {name!r}")
        return c

    def get_item(self, name: str) -> Item:
        c = self.find(name)
        if not isinstance(c, Item):
            raise WorldInconsistencyError(f"no item named {name!r}")
        return c

    def get_character(self, name: str) -> Character:
        c = self.find(name)
        if not isinstance(c, Character):
            raise WorldInconsistencyError(f"no character named {name!r}")
        return c

    def player(self) -> Character:
        return self.get_character(self.player_name)

    def player_location(self) -> Location:
        return self.get_location(self.player().location)

    def clone(self) -> "World":
        return copy.deepcopy(self)


@dataclass
class PlayerContext:
    """Everything the player can currently act on, all by name."""

    location: str
    reachable: list[str]
    blocked: list[tuple[str, str]]  # (target, obstacle)
    inventory: list[str]
    visible_items: list[str]
    visible_characters: list[str]


def normalize_name(raw: str) -> str:
    """Trim surrounding whitespace and one layer of angle brackets."""
    s = raw.strip()
    if len(s) >= 2 and s.startswith("<") and s.endswith(">"):
        s = s[1:-1].strip()
    return s


def resolve_name(world: World, raw: str):
    """Resolve free text to a component, ``PLAYER_INVENTORY``, or ``None``.

    Only canonical names match (case-insensitively, after normalization).
    Aliases that merely occur in descriptions never resolve; an unknown name
    returns ``None`` so callers can reject the transformation instead of
    crashing.
    """
    name = normalize_name(raw)
    if not name:
        return None
    if name.casefold() == INVENTORY_NAME.casefold():
        return PLAYER_INVENTORY
    return world.find(name)


def container_of(world: World, item_name: str) -> Container:
    """Return the unique container currently holding the item.

    Raises :class:`WorldInconsistencyError` when the item is registered but
    sits in zero or several containers -- that is an invariant breach, not a
    gameplay situation.
    """
    item = world.get_item(item_name)
    key = item.name.casefold()
    found: list[Container] = []
    for loc in world.locations:
        if any(n.casefold() == key for n in loc.items):
            found.append(loc)
        for pair in loc.blocked:
            if pair.obstacle.casefold() == key:
                found.append(ObstacleSlot(loc.name, pair.target))
    for ch in world.characters:
        if any(n.casefold() == key for n in ch.inventory):
            found.append(ch)
    if any(n.casefold() == key for n in world.detached_items):
        found.append(DETACHED)
    if len(found) != 1:
        raise WorldInconsistencyError(
            f"item {item.name!r} has {len(found)} containers, expected exactly one"
        )
    return found[0]


def player_context(world: World) -> PlayerContext:
    """Snapshot of the player's immediate surroundings."""
    player = world.player()
    loc = world.get_location(player.location)
    visible_chars = [
        c.name
        for c in world.characters
        if c.name != player.name and c.location.casefold() == loc.name.casefold()
    ]
    return PlayerContext(
        location=loc.name,
        reachable=list(loc.connecting),
        blocked=[(p.target, p.obstacle) for p in loc.blocked],
        inventory=list(player.inventory),
        visible_items=list(loc.items),
        visible_characters=visible_chars,
    )


# -- invariant checking ----------------------------------------------------


def verify_world(world: World) -> list[str]:
    """Exhaustively scan the world and return every invariant violation."""
    problems: list[str] = []
    seen: dict[str, str] = {}
    for c in world.components():
        if not c.name or not c.name.strip():
            problems.append("component with empty name")
            continue
        key = c.name.casefold()
        if key in RESERVED_NAMES:
            problems.append(f"reserved name used for a component: {c.name!r}")
        if "," in c.name:
            problems.append(f"comma in component name: {c.name!r}")
        if key in seen:
            problems.append(f"duplicate name (case-insensitive): {c.name!r}")
        seen[key] = c.name

    loc_keys = {l.name.casefold() for l in world.locations}

    def known(name: str) -> bool:
        return name.casefold() in seen

    for loc in world.locations:
        connecting = [n.casefold() for n in loc.connecting]
        blocked_targets = [p.target.casefold() for p in loc.blocked]
        if len(set(connecting)) != len(connecting):
            problems.append(f"{loc.name}: duplicate entries in connecting")
        if len(set(blocked_targets)) != len(blocked_targets):
            problems.append(f"{loc.name}: duplicate entries in blocked")
        if set(connecting) & set(blocked_targets):
            problems.append(f"{loc.name}: connecting and blocked overlap")
        if loc.name.casefold() in connecting or loc.name.casefold() in blocked_targets:
            problems.append(f"{loc.name}: self-reference in connecting/blocked")
        for n in loc.connecting:
            if n.casefold() not in loc_keys:
                problems.append(f"{loc.name}: connecting references unknown location {n!r}")
        for p in loc.blocked:
            if p.target.casefold() not in loc_keys:
                problems.append(f"{loc.name}: blocked references unknown location {p.target!r}")
            if not known(p.obstacle):
                problems.append(f"{loc.name}: obstacle references unknown component {p.obstacle!r}")

    players = [c for c in world.characters if c.name.casefold() == world.player_name.casefold()]
    if len(players) != 1:
        problems.append(f"player {world.player_name!r} does not resolve to exactly one character")
    for ch in world.characters:
        if ch.location.casefold() not in loc_keys:
            problems.append(f"{ch.name}: located in unknown location {ch.location!r}")

    # Every item sits in exactly one container.
    item_keys = {i.name.casefold(): i.name for i in world.items}
    counts = {k: 0 for k in item_keys}

    def count_ref(owner: str, name: str) -> None:
        k = name.casefold()
        if k in counts:
            counts[k] += 1
        else:
            problems.append(f"{owner}: references unregistered item {name!r}")

    for loc in world.locations:
        for n in loc.items:
            count_ref(loc.name, n)
        for p in loc.blocked:
            if p.obstacle.casefold() in item_keys:
                counts[p.obstacle.casefold()] += 1
    for ch in world.characters:
        for n in ch.inventory:
            count_ref(ch.name, n)
    for n in world.detached_items:
        count_ref("detached", n)
    for k, c in counts.items():
        if c != 1:
            problems.append(f"item {item_keys[k]!r} has {c} containers, expected exactly one")

    for pz in world.puzzles:
        if not pz.problem or not pz.answer:
            problems.append(f"{pz.name}: puzzle problem and answer must be non-empty")

    if world.objective is not None:
        problems.extend(_verify_objective(world, world.objective))
    return problems


def _verify_objective(world: World, obj: Objective) -> list[str]:
    problems = []
    target = world.find(obj.subject)
    expected = {
        ObjectiveKind.PLAYER_AT_LOCATION: Location,
        ObjectiveKind.PLAYER_HAS_ITEM: Item,
        ObjectiveKind.PLAYER_WITH_CHARACTER: Character,
        ObjectiveKind.ITEM_AT_LOCATION: Item,
    }[obj.kind]
    if not isinstance(target, expected):
        problems.append(
            f"objective subject {obj.subject!r} does not name a {expected.__name__.lower()}"
        )
    if obj.kind is ObjectiveKind.ITEM_AT_LOCATION:
        if obj.location is None:
            problems.append("item_at_location objective requires a location")
        elif not isinstance(world.find(obj.location), Location):
            problems.append(f"objective location {obj.location!r} does not name a location")
    elif obj.location is not None:
        problems.append(f"objective kind {obj.kind.value} takes no location field")
    return problems


def check_world(world: World) -> None:
    problems = verify_world(world)
    if problems:
        raise WorldInconsistencyError("; ".join(problems))


def objective_met(world: World) -> bool:
    """Check whether the world's objective currently holds.

    A world without an objective never completes.
    """
    obj = world.objective
    if obj is None:
        return False
    player = world.player()
    subject = obj.subject.casefold()
    if obj.kind is ObjectiveKind.PLAYER_AT_LOCATION:
        return player.location.casefold() == subject
    if obj.kind is ObjectiveKind.PLAYER_HAS_ITEM:
        return any(n.casefold() == subject for n in player.inventory)
    if obj.kind is ObjectiveKind.PLAYER_WITH_CHARACTER:
        other = world.get_character(obj.subject)
        return other.location.casefold() == player.location.casefold()
    loc = world.get_location(obj.location or "")
    return any(n.casefold() == subject for n in loc.items)


# -- primitive mutations ----------------------------------------------------


def _remove_item_ref(names: list[str], item_name: str) -> None:
    key = item_name.casefold()
    for i, n in enumerate(names):
        if n.casefold() == key:
            del names[i]
            return
    raise WorldInconsistencyError(f"item {item_name!r} missing from its container list")


def move_item(world: World, item_name: str, destination: Container) -> World:
    """Move an item from its current container into ``destination``.

    ``destination`` is a resolved :class:`Location`, :class:`Character`, or
    the ``PLAYER_INVENTORY`` sentinel. Checks run before any change, so the
    world is untouched on error.
    """
    try:
        item = world.get_item(item_name)
        source = container_of(world, item_name)
    except WorldInconsistencyError as exc:
        raise StructuralViolationError(str(exc)) from exc

    if isinstance(destination, PlayerInventory):
        dest_list = world.player().inventory
    elif isinstance(destination, Character):
        dest_list = world.get_character(destination.name).inventory
    elif isinstance(destination, Location):
        dest_list = world.get_location(destination.name).items
    else:
        raise StructuralViolationError(f"cannot move an item into {destination!r}")

    if isinstance(source, ObstacleSlot):
        raise StructuralViolationError(
            f"item {item.name!r} is wedged as an obstacle and cannot be moved"
        )
    if isinstance(source, DetachedPool):
        _remove_item_ref(world.detached_items, item.name)
    elif isinstance(source, Character):
        _remove_item_ref(source.inventory, item.name)
    else:
        _remove_item_ref(source.items, item.name)
    dest_list.append(item.name)
    return world


def unblock_passage(world: World, source_name: str, target_name: str) -> World:
    """Open the blocked passage ``source -> target``.

    The pair leaves the source's blocked list and the target joins its
    connecting list. An item obstacle is parked in the detached pool; other
    obstacle kinds simply lose the pair.
    """
    source = world.get_location(source_name)
    pair = next(
        (p for p in source.blocked if p.target.casefold() == target_name.casefold()),
        None,
    )
    if pair is None:
        raise StructuralViolationError(
            f"no blocked passage from {source_name!r} to {target_name!r}"
        )
    source.blocked.remove(pair)
    source.connecting.append(pair.target)
    if isinstance(world.find(pair.obstacle), Item):
        world.detached_items.append(pair.obstacle)
    return world


def set_player_location(world: World, target_name: str) -> World:
    """Teleport the player. Reachability is the validator's concern, not ours."""
    target = world.find(target_name)
    if not isinstance(target, Location):
        raise StructuralViolationError(f"no location named {target_name!r}")
    world.player().location = target.name
    return world

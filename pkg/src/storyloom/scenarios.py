"""Scenario documents: YAML loading, validation, and world serialization.

A scenario document is a YAML mapping describing a complete starting world
plus the objective that ends the story. Validation reports every problem it
can find in one pass rather than stopping at the first, since authors fix
scenario files by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from .errors import ScenarioError, UnknownScenarioError
from .world import (
    BlockedPassage,
    Character,
    Item,
    Location,
    Objective,
    ObjectiveKind,
    Puzzle,
    World,
    verify_world,
)

_SCENARIO_PACKAGE = "storyloom.data.scenarios"
SCENARIO_FILENAME = "scenario.yaml"


@dataclass(frozen=True)
class Scenario:
    """A named starting world."""

    name: str
    title: str
    world: World

    def new_world(self) -> World:
        """Fresh copy of the starting world, safe to mutate."""
        return self.world.clone()


# -- document schema ---------------------------------------------------------


def _want(doc: dict, key: str, kind: type, problems: list[str], default=None):
    """Fetch ``doc[key]`` if it has the expected type, else record a problem."""
    value = doc.get(key, default)
    if value is default:
        return default
    if not isinstance(value, kind):
        problems.append(f"{key!r} must be a {kind.__name__}, got {type(value).__name__}")
        return default
    return value


def _name_list(raw: Any, label: str, problems: list[str]) -> list[str]:
    if raw is None:
        return []
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        problems.append(f"{label} must be a list of strings")
        return []
    return list(raw)


def _section(doc: dict, key: str, problems: list[str]) -> list[dict]:
    raw = doc.get(key)
    if raw is None:
        return []
    if not isinstance(raw, list):
        problems.append(f"{key!r} must be a list")
        return []
    entries = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            problems.append(f"{key}[{i}] must be a mapping")
            continue
        if not isinstance(entry.get("name"), str) or not entry.get("name", "").strip():
            problems.append(f"{key}[{i}] needs a non-empty 'name'")
            continue
        entries.append(entry)
    return entries


def _parse_objective(raw: Any, problems: list[str]) -> Optional[Objective]:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        problems.append("'objective' must be a mapping")
        return None
    kind_raw = raw.get("kind")
    try:
        kind = ObjectiveKind(kind_raw)
    except ValueError:
        allowed = ", ".join(k.value for k in ObjectiveKind)
        problems.append(f"objective kind {kind_raw!r} is not one of: {allowed}")
        return None
    subject = raw.get("subject")
    if not isinstance(subject, str) or not subject.strip():
        problems.append("objective needs a non-empty 'subject'")
        return None
    location = raw.get("location")
    if location is not None and not isinstance(location, str):
        problems.append("objective 'location' must be a string")
        return None
    return Objective(kind=kind, subject=subject, location=location)


def world_from_document(doc: dict) -> World:
    """Build a world from a scenario document without validating it.

    Prefer :func:`scenario_from_document`, which validates; this is the raw
    constructor used by it and by log snapshots.
    """
    problems: list[str] = []
    world = _build_world(doc, problems)
    if problems:
        raise ScenarioError(problems)
    return world


def _build_world(doc: dict, problems: list[str]) -> World:
    locations = []
    for entry in _section(doc, "locations", problems):
        label = f"location {entry['name']!r}"
        blocked = []
        raw_blocked = entry.get("blocked")
        if raw_blocked is not None:
            if not isinstance(raw_blocked, list):
                problems.append(f"{label}: 'blocked' must be a list")
            else:
                for i, pair in enumerate(raw_blocked):
                    if (
                        not isinstance(pair, dict)
                        or not isinstance(pair.get("target"), str)
                        or not isinstance(pair.get("obstacle"), str)
                    ):
                        problems.append(
                            f"{label}: blocked[{i}] needs string 'target' and 'obstacle'"
                        )
                        continue
                    blocked.append(
                        BlockedPassage(target=pair["target"], obstacle=pair["obstacle"])
                    )
        locations.append(
            Location(
                name=entry["name"],
                descriptions=_name_list(
                    entry.get("descriptions"), f"{label}: descriptions", problems
                ),
                items=_name_list(entry.get("items"), f"{label}: items", problems),
                connecting=_name_list(
                    entry.get("connecting"), f"{label}: connecting", problems
                ),
                blocked=blocked,
            )
        )

    characters = []
    for entry in _section(doc, "characters", problems):
        label = f"character {entry['name']!r}"
        location = entry.get("location")
        if not isinstance(location, str) or not location.strip():
            problems.append(f"{label} needs a non-empty 'location'")
            location = ""
        characters.append(
            Character(
                name=entry["name"],
                descriptions=_name_list(
                    entry.get("descriptions"), f"{label}: descriptions", problems
                ),
                location=location,
                inventory=_name_list(
                    entry.get("inventory"), f"{label}: inventory", problems
                ),
            )
        )

    items = []
    for entry in _section(doc, "items", problems):
        label = f"item {entry['name']!r}"
        gettable = entry.get("gettable", False)
        if not isinstance(gettable, bool):
            problems.append(f"{label}: 'gettable' must be a boolean")
            gettable = False
        items.append(
            Item(
                name=entry["name"],
                descriptions=_name_list(
                    entry.get("descriptions"), f"{label}: descriptions", problems
                ),
                gettable=gettable,
            )
        )

    puzzles = []
    for entry in _section(doc, "puzzles", problems):
        label = f"puzzle {entry['name']!r}"
        problem = entry.get("problem")
        answer = entry.get("answer")
        if not isinstance(problem, str) or not problem.strip():
            problems.append(f"{label} needs a non-empty 'problem'")
            problem = ""
        if not isinstance(answer, str) or not answer.strip():
            problems.append(f"{label} needs a non-empty 'answer'")
            answer = ""
        puzzles.append(
            Puzzle(
                name=entry["name"],
                descriptions=_name_list(
                    entry.get("descriptions"), f"{label}: descriptions", problems
                ),
                problem=problem,
                answer=answer,
            )
        )

    player = _want(doc, "player", str, problems)
    if not player or not player.strip():
        problems.append("'player' must name the player character")
        player = ""

    return World(
        locations=locations,
        characters=characters,
        items=items,
        puzzles=puzzles,
        objective=_parse_objective(doc.get("objective"), problems),
        player_name=player,
        detached_items=_name_list(doc.get("detached_items"), "detached_items", problems),
    )


def world_to_document(world: World) -> dict:
    """Serialize a world back into scenario-document form."""
    doc: dict[str, Any] = {
        "player": world.player_name,
        "locations": [
            {
                "name": loc.name,
                "descriptions": list(loc.descriptions),
                "items": list(loc.items),
                "connecting": list(loc.connecting),
                "blocked": [
                    {"target": p.target, "obstacle": p.obstacle} for p in loc.blocked
                ],
            }
            for loc in world.locations
        ],
        "characters": [
            {
                "name": c.name,
                "descriptions": list(c.descriptions),
                "location": c.location,
                "inventory": list(c.inventory),
            }
            for c in world.characters
        ],
        "items": [
            {
                "name": i.name,
                "descriptions": list(i.descriptions),
                "gettable": i.gettable,
            }
            for i in world.items
        ],
        "puzzles": [
            {
                "name": p.name,
                "descriptions": list(p.descriptions),
                "problem": p.problem,
                "answer": p.answer,
            }
            for p in world.puzzles
        ],
    }
    if world.objective is not None:
        objective: dict[str, Any] = {
            "kind": world.objective.kind.value,
            "subject": world.objective.subject,
        }
        if world.objective.location is not None:
            objective["location"] = world.objective.location
        doc["objective"] = objective
    if world.detached_items:
        doc["detached_items"] = list(world.detached_items)
    return doc


# -- scenario loading --------------------------------------------------------


def validate_scenario_document(doc: Any) -> list[str]:
    """Return every violation found in a scenario document.

    Covers both document shape and the world invariants of the built world.
    An empty list means the document is a loadable scenario.
    """
    if not isinstance(doc, dict):
        return ["scenario document must be a YAML mapping"]
    problems: list[str] = []
    name = _want(doc, "name", str, problems)
    if not name or not name.strip():
        problems.append("'name' must be a non-empty string")
    _want(doc, "title", str, problems)
    world = _build_world(doc, problems)
    # World checks run even when the document shape is off: the builder
    # degrades gracefully, and authors want the full list in one pass.
    problems.extend(verify_world(world))
    return problems


def scenario_from_document(doc: Any) -> Scenario:
    """Validate and build a scenario, raising ScenarioError on any problem."""
    problems = validate_scenario_document(doc)
    if problems:
        raise ScenarioError(problems)
    return Scenario(
        name=doc["name"],
        title=doc.get("title", doc["name"]),
        world=_build_world(doc, []),
    )


def _parse_yaml(text: str, origin: str) -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError([f"{origin}: invalid YAML: {exc}"]) from exc


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Load a scenario from a YAML file, or a directory containing one."""
    p = Path(path)
    if p.is_dir():
        p = p / SCENARIO_FILENAME
    doc = _parse_yaml(p.read_text(encoding="utf-8"), str(p))
    return scenario_from_document(doc)


def bundled_scenario_names() -> tuple[str, ...]:
    """Names of the scenarios that ship inside the package."""
    root = resources.files(_SCENARIO_PACKAGE)
    names = [
        entry.name
        for entry in root.iterdir()
        if entry.is_dir() and (entry / SCENARIO_FILENAME).is_file()
    ]
    return tuple(sorted(names))


def load_bundled_scenario(name: str) -> Scenario:
    """Load one of the packaged scenarios by directory name."""
    root = resources.files(_SCENARIO_PACKAGE)
    entry = root / name / SCENARIO_FILENAME
    if name not in bundled_scenario_names():
        raise UnknownScenarioError(
            f"no bundled scenario named {name!r}; available: "
            + ", ".join(bundled_scenario_names())
        )
    doc = _parse_yaml(entry.read_text(encoding="utf-8"), f"bundled:{name}")
    return scenario_from_document(doc)


def discover_scenarios(directory: Union[str, Path]) -> dict[str, Scenario]:
    """Load every scenario under ``directory``.

    Accepts both bare YAML files and subdirectories holding a scenario.yaml.
    Scenarios are keyed by their declared name.
    """
    found: dict[str, Scenario] = {}
    base = Path(directory)
    candidates = sorted(base.glob("*.yaml")) + sorted(base.glob(f"*/{SCENARIO_FILENAME}"))
    for path in candidates:
        scenario = load_scenario(path)
        found[scenario.name] = scenario
    return found

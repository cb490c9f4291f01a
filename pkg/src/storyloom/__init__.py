"""storyloom: interactive storytelling over a symbolic world model.

A pluggable language-model backend reads the player's free-text input and
suggests transformations of the world state; the world model validates each
one and applies only those the current state allows.
"""

from .backends import (
    Backend,
    BackendConfig,
    ScriptedBackend,
    build_backend,
    bundled_backend_configs,
)
from .errors import StoryloomError
from .locales import Locale, load_locale, supported_locales
from .logs import SessionLog, TurnRecord, load_log, replay_log
from .parsing import ParsedResponse, emit_response, parse_response
from .rendering import PromptPair, build_prompt, render_world
from .scenarios import (
    Scenario,
    bundled_scenario_names,
    load_bundled_scenario,
    load_scenario,
)
from .session import Session
from .transformations import (
    ApplicationReport,
    ExecutionOptions,
    MoveItem,
    MovePlayer,
    Outcome,
    Rejection,
    TurnPlan,
    UnblockLocation,
    execute_plan,
    validate,
)
from .world import (
    Character,
    Item,
    Location,
    Objective,
    ObjectiveKind,
    Puzzle,
    World,
    check_world,
    objective_met,
    verify_world,
)

__version__ = "0.1.0"

__all__ = [
    "ApplicationReport",
    "Backend",
    "BackendConfig",
    "Character",
    "ExecutionOptions",
    "Item",
    "Locale",
    "Location",
    "MoveItem",
    "MovePlayer",
    "Objective",
    "ObjectiveKind",
    "Outcome",
    "ParsedResponse",
    "PromptPair",
    "Puzzle",
    "Rejection",
    "Scenario",
    "ScriptedBackend",
    "Session",
    "SessionLog",
    "StoryloomError",
    "TurnPlan",
    "TurnRecord",
    "UnblockLocation",
    "World",
    "build_backend",
    "build_prompt",
    "bundled_backend_configs",
    "bundled_scenario_names",
    "check_world",
    "emit_response",
    "execute_plan",
    "load_bundled_scenario",
    "load_locale",
    "load_log",
    "load_scenario",
    "objective_met",
    "parse_response",
    "render_world",
    "replay_log",
    "supported_locales",
    "validate",
    "verify_world",
    "__version__",
]

"""Scene rendering and prompt assembly.

The scene text doubles as the machine-readable world state embedded in the
world-update prompt, so its format is fixed: change a single byte and the
backend examples stop matching what the model sees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import EmptyInputError
from .locales import Locale, load_locale
from .world import Puzzle, World, player_context

NONE_LITERAL = "None"

_PLACEHOLDER_RE = re.compile(r"\{(input|world_state)\}")


def _tag(name: str) -> str:
    return f"<{name}>"


def _tag_list(names: list[str]) -> str:
    if not names:
        return NONE_LITERAL
    return ", ".join(_tag(n) for n in names)


def _sentence_run(parts: list[str]) -> str:
    return " ".join(parts)


def _described(prefix: str, parts: list[str]) -> str:
    # No trailing space when a component has nothing to say about itself.
    return f"{prefix} {_sentence_run(parts)}" if parts else prefix


def render_world(world: World) -> str:
    """Render the player's current view of the world as scene text.

    The output has two halves: a summary block naming what is where, and a
    description block with one line per visible component. Components the
    player cannot see (other locations, distant characters, their items) are
    omitted entirely.
    """
    ctx = player_context(world)
    player = world.player()
    loc = world.get_location(ctx.location)

    lines = [
        f"The player is in {_tag(ctx.location)}",
        f"From {_tag(ctx.location)} the player can access: {_tag_list(ctx.reachable)}",
        "From {} there are blocked passages to: {}".format(
            _tag(ctx.location),
            ", ".join(f"{_tag(t)} blocked by {_tag(o)}" for t, o in ctx.blocked)
            or NONE_LITERAL,
        ),
        f"The player has the following objects in the inventory: {_tag_list(ctx.inventory)}",
        f"The player can see the following objects: {_tag_list(ctx.visible_items)}",
        f"The player can see the following characters: {_tag_list(ctx.visible_characters)}",
        "",
        "Here is a description of each component.",
        f"{_tag(loc.name)}: "
        + _sentence_run(["This is the player's location."] + list(loc.descriptions)),
        "Characters:",
        f"- {_tag('Player')}: "
        + _sentence_run(
            [f"The player is acting as {_tag(player.name)}."] + list(player.descriptions)
        ),
    ]

    npc_items: list[str] = []
    for name in ctx.visible_characters:
        npc = world.get_character(name)
        parts = list(npc.descriptions)
        if npc.inventory:
            parts.append(
                f"This character has the following items: {_tag_list(list(npc.inventory))}"
            )
            npc_items.extend(npc.inventory)
        lines.append(_described(f"- {_tag(npc.name)}:", parts))

    lines.append("Objects:")
    described = ctx.visible_items + npc_items + ctx.inventory + [o for _, o in ctx.blocked]
    for name in described:
        component = world.find(name)
        parts = list(component.descriptions)
        if isinstance(component, Puzzle):
            parts.append(component.problem)
        lines.append(_described(f"- {_tag(component.name)}:", parts))

    return "\n".join(lines)


@dataclass(frozen=True)
class PromptPair:
    """System and user messages ready to hand to a backend."""

    system: str
    user: str


def build_prompt(
    world: World, player_input: str, locale: Union[str, Locale] = "en"
) -> PromptPair:
    """Assemble the world-update prompt for one turn.

    Raises EmptyInputError when the player input is blank; a blank input
    produces a user message that asks the model to react to nothing.
    """
    if not player_input or not player_input.strip():
        raise EmptyInputError("player input is empty")
    if isinstance(locale, str):
        locale = load_locale(locale)
    # Single-pass substitution: str.format would choke on braces in scene
    # text, and chained replace() would re-scan substituted content.
    values = {"input": player_input, "world_state": render_world(world)}
    user = _PLACEHOLDER_RE.sub(lambda m: values[m.group(1)], locale.user_template)
    return PromptPair(system=locale.system_prompt, user=user)

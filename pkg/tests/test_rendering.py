"""Scene rendering and prompt assembly."""

from __future__ import annotations

import pytest

from conftest import golden_scene
from storyloom.errors import EmptyInputError, UnsupportedLocaleError
from storyloom.locales import load_locale, supported_locales
from storyloom.rendering import build_prompt, render_world
from storyloom.world import (
    BlockedPassage,
    Character,
    Item,
    Location,
    Puzzle,
    World,
    set_player_location,
)


def test_scenario_a_starting_scene_is_byte_exact(world_a):
    assert render_world(world_a) == golden_scene("scenario-a")


def test_scenario_b_starting_scene_is_byte_exact(world_b):
    assert render_world(world_b) == golden_scene("scenario-b")


def test_empty_sections_render_none(world_a):
    text = render_world(world_a)
    assert "there are blocked passages to: None" in text
    assert "objects in the inventory: None" in text


def test_blocked_passage_format(world_a):
    set_player_location(world_a, "Kitchen")
    text = render_world(world_a)
    assert "there are blocked passages to: <Garden> blocked by <Lock>" in text
    assert "- <Lock>:" in text


def test_puzzle_obstacle_renders_description_and_problem(world_b):
    set_player_location(world_b, "Silent zone")
    text = render_world(world_b)
    assert "<Cell> blocked by <Puzzle>" in text
    line = next(l for l in text.splitlines() if l.startswith("- <Puzzle>:"))
    assert line.endswith("What am I?")


def test_objects_section_order(world_b):
    """Location items, then NPC items, then inventory, then obstacles."""
    names = []
    for line in render_world(world_b).splitlines():
        if line.startswith("- <") and "Player" not in line:
            names.append(line[3 : line.index(">")])
    assert names == ["Writings", "Pond", "Guitar", "Firewall"]


def test_npc_inventory_sentence(world_a):
    line = next(
        l for l in render_world(world_a).splitlines() if l.startswith("- <Laura>")
    )
    assert line.endswith("This character has the following items: <Key>")


def test_distant_components_are_invisible(world_a):
    text = render_world(world_a)
    assert "Turtle" not in text
    assert "Garden" not in text


def synthetic_world() -> World:
    return World(
        locations=[
            Location(
                name="Deck",
                descriptions=["Wind.", "Salt."],
                items=["Crate"],
                connecting=["Hold"],
                blocked=[BlockedPassage(target="Bridge", obstacle="Door riddle")],
            ),
            Location(name="Hold", connecting=["Deck"]),
            Location(name="Bridge", connecting=["Deck"]),
        ],
        characters=[
            Character(name="Ida", descriptions=["The captain."], location="Deck",
                      inventory=["Spyglass"]),
            Character(name="Mo", location="Deck"),
        ],
        items=[Item(name="Crate"), Item(name="Spyglass", gettable=True)],
        puzzles=[
            Puzzle(
                name="Door riddle",
                descriptions=["A riddle is etched into the door."],
                problem="What has keys but no locks?",
                answer="piano",
            )
        ],
        player_name="Mo",
    )


def test_synthetic_world_scene_layout():
    text = render_world(synthetic_world())
    assert text.splitlines() == [
        "The player is in <Deck>",
        "From <Deck> the player can access: <Hold>",
        "From <Deck> there are blocked passages to: <Bridge> blocked by <Door riddle>",
        "The player has the following objects in the inventory: None",
        "The player can see the following objects: <Crate>",
        "The player can see the following characters: <Ida>",
        "",
        "Here is a description of each component.",
        "<Deck>: This is the player's location. Wind. Salt.",
        "Characters:",
        "- <Player>: The player is acting as <Mo>.",
        "- <Ida>: The captain. This character has the following items: <Spyglass>",
        "Objects:",
        "- <Crate>:",
        "- <Spyglass>:",
        "- <Door riddle>: A riddle is etched into the door. What has keys but no locks?",
    ]


def test_build_prompt_substitutes_both_placeholders(world_a):
    pair = build_prompt(world_a, "look around")
    assert pair.system == load_locale("en").system_prompt
    assert 'player input "look around"' in pair.user
    assert render_world(world_a) in pair.user
    assert "{input}" not in pair.user
    assert "{world_state}" not in pair.user


def test_build_prompt_does_not_rescan_substituted_text(world_a):
    pair = build_prompt(world_a, "say {world_state} aloud")
    # The literal placeholder from the player must survive verbatim.
    assert 'player input "say {world_state} aloud"' in pair.user


def test_build_prompt_rejects_blank_input(world_a):
    with pytest.raises(EmptyInputError):
        build_prompt(world_a, "")
    with pytest.raises(EmptyInputError):
        build_prompt(world_a, "   \n")


def test_build_prompt_spanish_locale(world_a):
    pair = build_prompt(world_a, "mirar alrededor", "es")
    assert pair.system == load_locale("es").system_prompt
    assert "mirar alrededor" in pair.user
    assert render_world(world_a) in pair.user


def test_unknown_locale_raises(world_a):
    assert supported_locales() == ("en", "es")
    with pytest.raises(UnsupportedLocaleError):
        build_prompt(world_a, "hi", "fr")
    with pytest.raises(UnsupportedLocaleError):
        load_locale("de")

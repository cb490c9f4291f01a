"""World model: lookups, invariants, primitive mutations."""

from __future__ import annotations

import pytest

from storyloom.errors import StructuralViolationError, WorldInconsistencyError
from storyloom.world import (
    PLAYER_INVENTORY,
    BlockedPassage,
    Character,
    Item,
    Location,
    Objective,
    ObjectiveKind,
    ObstacleSlot,
    World,
    check_world,
    container_of,
    move_item,
    normalize_name,
    objective_met,
    player_context,
    resolve_name,
    set_player_location,
    unblock_passage,
    verify_world,
)


def tiny_world() -> World:
    """Two rooms, one NPC, one blocked passage with an item obstacle."""
    return World(
        locations=[
            Location(
                name="Hall",
                items=["Coin"],
                connecting=["Yard"],
                blocked=[BlockedPassage(target="Vault", obstacle="Boulder")],
            ),
            Location(name="Yard", connecting=["Hall"]),
            Location(name="Vault", connecting=["Hall"]),
        ],
        characters=[
            Character(name="Ava", location="Hall"),
            Character(name="Bo", location="Yard", inventory=["Rope"]),
        ],
        items=[
            Item(name="Coin", gettable=True),
            Item(name="Rope", gettable=True),
            Item(name="Boulder"),
        ],
        objective=Objective(kind=ObjectiveKind.PLAYER_AT_LOCATION, subject="Vault"),
        player_name="Ava",
    )


def test_tiny_world_passes_verification():
    assert verify_world(tiny_world()) == []


def test_normalize_name_strips_space_and_one_bracket_layer():
    assert normalize_name("  Key ") == "Key"
    assert normalize_name("<Key>") == "Key"
    assert normalize_name("< Key >") == "Key"
    assert normalize_name("<<Key>>") == "<Key>"
    assert normalize_name("") == ""


def test_resolve_name_is_case_insensitive_and_canonical_only(world_a):
    assert resolve_name(world_a, "key").name == "Key"
    assert resolve_name(world_a, "<TURTLE>").name == "Turtle"
    assert resolve_name(world_a, "Inventory") is PLAYER_INVENTORY
    assert resolve_name(world_a, "inventory") is PLAYER_INVENTORY
    # "Hojita" only appears inside descriptions, so it is not a component.
    assert resolve_name(world_a, "Hojita") is None
    assert resolve_name(world_a, "") is None


def test_container_of_each_container_kind():
    w = tiny_world()
    assert container_of(w, "Coin").name == "Hall"
    assert container_of(w, "Rope").name == "Bo"
    assert container_of(w, "Boulder") == ObstacleSlot("Hall", "Vault")
    w.detached_items.append("Coin")
    w.locations[0].items.remove("Coin")
    assert repr(container_of(w, "Coin")) == "<detached obstacles>"


def test_container_of_rejects_zero_or_multiple_containers():
    w = tiny_world()
    w.locations[1].items.append("Coin")
    with pytest.raises(WorldInconsistencyError):
        container_of(w, "Coin")
    w.locations[1].items.remove("Coin")
    w.locations[0].items.remove("Coin")
    with pytest.raises(WorldInconsistencyError):
        container_of(w, "Coin")


def test_verify_world_reports_every_problem_at_once():
    w = tiny_world()
    w.locations[0].connecting.append("Nowhere")  # dangling reference
    w.items.append(Item(name="coin"))  # duplicate, case-insensitively
    w.items.append(Item(name="None"))  # reserved
    w.items.append(Item(name="a, b"))  # comma breaks list rendering
    problems = verify_world(w)
    assert len(problems) >= 4
    joined = "\n".join(problems)
    assert "Nowhere" in joined
    assert "coin" in joined.lower()
    assert "reserved" in joined.lower()
    assert "comma" in joined


def test_verify_world_catches_connecting_blocked_overlap():
    w = tiny_world()
    w.locations[0].connecting.append("Vault")
    assert any("overlap" in p for p in verify_world(w))


def test_verify_world_catches_self_connection():
    w = tiny_world()
    w.locations[0].connecting.append("Hall")
    assert any("self-reference" in p for p in verify_world(w))


def test_verify_world_requires_exactly_one_player():
    w = tiny_world()
    w.player_name = "Ghost"
    assert any("player" in p.lower() for p in verify_world(w))


def test_verify_world_counts_item_containers():
    w = tiny_world()
    w.characters[1].inventory.append("Coin")
    assert any("containers" in p for p in verify_world(w))
    w.characters[1].inventory.remove("Coin")
    w.locations[0].items.remove("Coin")
    assert any("containers" in p for p in verify_world(w))


def test_verify_world_checks_objective_shape():
    w = tiny_world()
    w.objective = Objective(kind=ObjectiveKind.ITEM_AT_LOCATION, subject="Coin")
    assert any("location" in p for p in verify_world(w))
    w.objective = Objective(
        kind=ObjectiveKind.PLAYER_AT_LOCATION, subject="Vault", location="Hall"
    )
    assert any("no location field" in p for p in verify_world(w))
    w.objective = Objective(kind=ObjectiveKind.PLAYER_HAS_ITEM, subject="Vault")
    assert any("item" in p for p in verify_world(w))


def test_check_world_raises_with_joined_problems():
    w = tiny_world()
    w.player_name = ""
    with pytest.raises(WorldInconsistencyError):
        check_world(w)


def test_player_context_snapshot():
    ctx = player_context(tiny_world())
    assert ctx.location == "Hall"
    assert ctx.reachable == ["Yard"]
    assert ctx.blocked == [("Vault", "Boulder")]
    assert ctx.inventory == []
    assert ctx.visible_items == ["Coin"]
    assert ctx.visible_characters == []


def test_objective_met_each_kind():
    w = tiny_world()
    assert not objective_met(w)
    w.player().location = "Vault"
    assert objective_met(w)

    w = tiny_world()
    w.objective = Objective(kind=ObjectiveKind.PLAYER_HAS_ITEM, subject="Coin")
    assert not objective_met(w)
    w.player().inventory.append("Coin")
    w.locations[0].items.remove("Coin")
    assert objective_met(w)

    w = tiny_world()
    w.objective = Objective(kind=ObjectiveKind.PLAYER_WITH_CHARACTER, subject="Bo")
    assert not objective_met(w)
    w.player().location = "Yard"
    assert objective_met(w)

    w = tiny_world()
    w.objective = Objective(
        kind=ObjectiveKind.ITEM_AT_LOCATION, subject="Rope", location="Yard"
    )
    assert not objective_met(w)
    w.locations[1].items.append("Rope")
    w.characters[1].inventory.remove("Rope")
    assert objective_met(w)


def test_objective_met_without_objective_is_false():
    w = tiny_world()
    w.objective = None
    assert not objective_met(w)


def test_move_item_between_containers():
    w = tiny_world()
    move_item(w, "Coin", PLAYER_INVENTORY)
    assert container_of(w, "Coin").name == "Ava"
    move_item(w, "Coin", w.get_location("Hall"))
    assert container_of(w, "Coin").name == "Hall"
    move_item(w, "Coin", w.get_character("Bo"))
    assert container_of(w, "Coin").name == "Bo"
    assert verify_world(w) == []


def test_move_item_refuses_obstacle_slot_source():
    w = tiny_world()
    with pytest.raises(StructuralViolationError):
        move_item(w, "Boulder", PLAYER_INVENTORY)
    # and the world is untouched
    assert container_of(w, "Boulder") == ObstacleSlot("Hall", "Vault")


def test_move_item_from_detached_pool():
    w = tiny_world()
    unblock_passage(w, "Hall", "Vault")
    assert repr(container_of(w, "Boulder")) == "<detached obstacles>"
    move_item(w, "Boulder", w.get_location("Hall"))
    assert container_of(w, "Boulder").name == "Hall"
    assert verify_world(w) == []


def test_unblock_passage_moves_pair_and_detaches_item_obstacle():
    w = tiny_world()
    unblock_passage(w, "Hall", "Vault")
    hall = w.get_location("Hall")
    assert hall.blocked == []
    assert "Vault" in hall.connecting
    assert "Boulder" in w.detached_items
    assert verify_world(w) == []


def test_unblock_passage_without_pair_raises():
    w = tiny_world()
    with pytest.raises(StructuralViolationError):
        unblock_passage(w, "Yard", "Vault")


def test_set_player_location():
    w = tiny_world()
    set_player_location(w, "Yard")
    assert w.player().location == "Yard"
    with pytest.raises(StructuralViolationError):
        set_player_location(w, "Coin")


def test_clone_is_deep():
    w = tiny_world()
    clone = w.clone()
    clone.locations[0].items.clear()
    assert w.locations[0].items == ["Coin"]

"""Shared fixtures: bundled scenarios, demo backends, golden texts."""

from __future__ import annotations

from importlib import resources

import pytest

from storyloom.analysis import TAG_ORDER, annotate_log
from storyloom.backends import ScriptedBackend, build_backend, bundled_backend_configs
from storyloom.scenarios import load_bundled_scenario
from storyloom.session import Session


def golden_scene(name: str) -> str:
    return (
        resources.files("storyloom.data.scenarios") / name / "start.en.txt"
    ).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def scenario_a():
    return load_bundled_scenario("scenario-a")


@pytest.fixture(scope="session")
def scenario_b():
    return load_bundled_scenario("scenario-b")


@pytest.fixture
def world_a(scenario_a):
    return scenario_a.new_world()


@pytest.fixture
def world_b(scenario_b):
    return scenario_b.new_world()


@pytest.fixture(scope="session")
def demo_configs():
    return bundled_backend_configs()


@pytest.fixture
def demo_backend_a(demo_configs):
    return build_backend(demo_configs["scenario-a-demo"])


@pytest.fixture
def demo_backend_b(demo_configs):
    return build_backend(demo_configs["scenario-b-demo"])


#: Scripted inputs completing scenario A through Laura's key.
KEY_PATH = [
    "ask Laura for the key",
    "go to the kitchen",
    "unlock the garden door with the key",
    "go to the garden",
    "take the turtle",
    "walk back to the kitchen",
    "drop the turtle on the floor",
]

#: Scripted inputs completing scenario A by breaking the lock.
HAMMER_PATH = [
    "grab the grey hammer",
    "go to the kitchen",
    "break the lock with the grey hammer",
    "go to the garden",
    "take the turtle",
    "walk back to the kitchen",
    "drop the turtle on the floor",
]

#: Scripted inputs completing scenario B: douse the fire, answer the riddle.
WAVE_RIDDLE_PATH = [
    "summon a giant wave over the flames",
    "walk into the silent zone",
    "answer the riddle: echo",
    "enter the cell",
]


IDLE_REPLY = (
    "- Moved objects: None\n"
    "- Blocked passages now available: None\n"
    "- Your location changed: None\n"
    "#Time passes quietly.#"
)

FILLER_INPUTS = [
    "look around",
    "think for a moment",
    "listen carefully",
    "check my pockets",
    "stretch",
    "hum a tune",
    "wait",
]

# Eight reviewers played both scenarios in both languages and tagged the
# turns that went wrong. Tag counts per reviewer, in TAG_ORDER
# (LLM-MI, LLM-PM, LLM-UL, WM-Planning, WM-Memory).
REVIEWS = {
    ("scenario-a", "en"): [
        ("reviewer-1", (0, 0, 0, 1, 0)),
        ("reviewer-2", (0, 0, 0, 1, 0)),
        ("reviewer-3", (3, 1, 0, 0, 0)),
        ("reviewer-4", (4, 1, 0, 2, 0)),
    ],
    ("scenario-a", "es"): [
        ("reviewer-5", (3, 0, 0, 2, 1)),
        ("reviewer-6", (1, 0, 0, 0, 0)),
        ("reviewer-7", (4, 0, 1, 1, 0)),
        ("reviewer-8", (0, 0, 0, 0, 0)),
    ],
    ("scenario-b", "en"): [
        ("reviewer-1", (0, 0, 1, 0, 0)),
        ("reviewer-2", (0, 0, 1, 0, 0)),
        ("reviewer-3", (0, 0, 1, 0, 0)),
        ("reviewer-4", (0, 0, 0, 0, 0)),
    ],
    ("scenario-b", "es"): [
        ("reviewer-5", (1, 1, 2, 0, 0)),
        ("reviewer-6", (0, 2, 1, 0, 0)),
        ("reviewer-7", (0, 1, 0, 0, 0)),
        ("reviewer-8", (0, 1, 0, 0, 0)),
    ],
}

# Per-configuration totals the campaign has to add up to.
EXPECTED_TOTALS = {
    ("scenario-a", "en"): (7, 2, 0, 4, 0),
    ("scenario-a", "es"): (8, 0, 1, 3, 1),
    ("scenario-b", "en"): (0, 0, 3, 0, 0),
    ("scenario-b", "es"): (1, 5, 3, 0, 0),
}

EXPECTED_CSV = (
    "scenario,locale,sessions,LLM-MI,LLM-PM,LLM-UL,WM-Planning,WM-Memory\n"
    "scenario-a,en,4,7,2,0,4,0\n"
    "scenario-a,es,4,8,0,1,3,1\n"
    "scenario-b,en,4,0,0,3,0,0\n"
    "scenario-b,es,4,1,5,3,0,0\n"
)


@pytest.fixture(scope="session")
def campaign_dir(tmp_path_factory, scenario_a, scenario_b):
    """Sixteen annotated session logs, one per reviewer and configuration."""
    root = tmp_path_factory.mktemp("campaign")
    scenarios = {"scenario-a": scenario_a, "scenario-b": scenario_b}
    for (scenario_name, locale), reviews in REVIEWS.items():
        for reviewer, counts in reviews:
            path = root / f"{scenario_name}-{locale}-{reviewer}.jsonl"
            session = Session(
                scenarios[scenario_name],
                ScriptedBackend(fallback=IDLE_REPLY),
                locale=locale,
                log_path=path,
            )
            tags = [tag for tag, n in zip(TAG_ORDER, counts) for _ in range(n)]
            for turn in range(max(len(tags), 1)):
                session.submit(FILLER_INPUTS[turn % len(FILLER_INPUTS)])
            for turn, tag in enumerate(tags, start=1):
                annotate_log(path, turn, [tag.value])
    return root


def pytest_runtest_logreport(report):
    """Print one pass/fail line per acceptance criterion test."""
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        print(f"\n[acceptance] {'PASS' if report.passed else 'FAIL'} {name}")
    elif report.failed:
        print(f"\n[acceptance] FAIL {name}")

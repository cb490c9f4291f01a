"""Parsing of backend replies into transformation plans.

A reply carries up to three category lines plus a narration fenced by '#'
characters. Models drift from the format in small ways (extra whitespace,
repeated categories, missing dashes, bare names without angle brackets), so
the parser is deliberately forgiving: it extracts what it can recognize and
only gives up when a reply contains no category line and no narration at all.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ResponseParseError
from .transformations import MoveItem, MovePlayer, TurnPlan, UnblockLocation
from .world import normalize_name

_MOVED_RE = re.compile(r"^\s*-?\s*Moved objects?\s*:\s*(.*)$", re.IGNORECASE)
_UNBLOCKED_RE = re.compile(
    r"^\s*-?\s*Blocked passages? now available\s*:\s*(.*)$", re.IGNORECASE
)
_LOCATION_RE = re.compile(r"^\s*-?\s*Your location changed\s*:\s*(.*)$", re.IGNORECASE)

_MOVE_PAIR_RE = re.compile(r"<([^<>]*)>\s+now is in\s+<([^<>]*)>")
_TAGGED_RE = re.compile(r"<([^<>]*)>")


def _is_none_literal(text: str) -> bool:
    return normalize_name(text).casefold() in ("", "none")


def _parse_moves(payload: str) -> list[tuple[str, str]]:
    if _is_none_literal(payload):
        return []
    pairs = [
        (item.strip(), dest.strip())
        for item, dest in _MOVE_PAIR_RE.findall(payload)
        if item.strip() and dest.strip()
    ]
    if pairs:
        return pairs
    # No angle brackets anywhere; fall back to bare names.
    for chunk in payload.split(","):
        parts = re.split(r"\s+now is in\s+", chunk, maxsplit=1)
        if len(parts) == 2:
            item, dest = normalize_name(parts[0]), normalize_name(parts[1])
            if item and dest:
                pairs.append((item, dest))
    return pairs


def _parse_names(payload: str) -> list[str]:
    if _is_none_literal(payload):
        return []
    tagged = [t.strip() for t in _TAGGED_RE.findall(payload) if t.strip()]
    if tagged:
        return [t for t in tagged if not _is_none_literal(t)]
    names = [normalize_name(c) for c in payload.split(",")]
    return [n for n in names if n and not _is_none_literal(n)]


def _parse_location(payload: str) -> Optional[str]:
    names = _parse_names(payload)
    return names[0] if names else None


def _extract_narration(text: str) -> str:
    first = text.find("#")
    if first < 0:
        return ""
    last = text.rfind("#")
    if last > first:
        return text[first + 1 : last].strip()
    return text[first + 1 :].strip()


@dataclass
class ParsedResponse:
    """Structured view of one backend reply."""

    moves: list[tuple[str, str]] = field(default_factory=list)
    unblocks: list[str] = field(default_factory=list)
    new_location: Optional[str] = None
    narration: str = ""

    def to_plan(self) -> TurnPlan:
        return TurnPlan(
            moves=[MoveItem(item=i, destination=d) for i, d in self.moves],
            unblocks=[UnblockLocation(target=t) for t in self.unblocks],
            move_player=(
                MovePlayer(target=self.new_location) if self.new_location else None
            ),
        )


def parse_response(text: str) -> ParsedResponse:
    """Parse one backend reply.

    Repeated category lines accumulate, except the location line where the
    last occurrence wins. Raises ResponseParseError when the reply contains
    neither a category line nor a narration.
    """
    moves: list[tuple[str, str]] = []
    unblocks: list[str] = []
    new_location: Optional[str] = None
    saw_category = False

    for line in text.splitlines():
        m = _MOVED_RE.match(line)
        if m:
            saw_category = True
            moves.extend(_parse_moves(m.group(1)))
            continue
        m = _UNBLOCKED_RE.match(line)
        if m:
            saw_category = True
            unblocks.extend(_parse_names(m.group(1)))
            continue
        m = _LOCATION_RE.match(line)
        if m:
            saw_category = True
            new_location = _parse_location(m.group(1))

    narration = _extract_narration(text)
    if not saw_category and not narration:
        raise ResponseParseError(
            f"reply has no category lines and no narration: {text!r}"
        )
    return ParsedResponse(
        moves=moves, unblocks=unblocks, new_location=new_location, narration=narration
    )


def emit_response(parsed: ParsedResponse) -> str:
    """Render a ParsedResponse back into reply text.

    Produces the canonical single-spaced form of the format, which parses
    back to an equal ParsedResponse as long as names stay free of angle
    brackets, commas, '#' and newlines.
    """
    moved = (
        ", ".join(f"<{i}> now is in <{d}>" for i, d in parsed.moves)
        if parsed.moves
        else "None"
    )
    unblocked = (
        ", ".join(f"<{t}>" for t in parsed.unblocks) if parsed.unblocks else "None"
    )
    location = f"<{parsed.new_location}>" if parsed.new_location else "None"
    lines = [
        f"- Moved object: {moved}",
        f"- Blocked passages now available: {unblocked}",
        f"- Your location changed: {location}",
    ]
    if parsed.narration:
        lines.append(f"#{parsed.narration}#")
    return "\n".join(lines)

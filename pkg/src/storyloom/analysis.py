"""Error annotation and aggregate reporting over session logs.

Reviewers tag individual turns with error categories after a playthrough;
the report path then groups the tags by scenario and locale, emits a table
or CSV, and draws a bar chart of the same tallies.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .errors import MalformedLogError, UnknownTurnError
from .logs import LogWriter, SessionLog, load_log


class ErrorTag(str, Enum):
    """Closed set of error categories used when annotating turns.

    The LLM-* tags mark transformations the model should not have suggested
    (wrong item move, wrong player move, wrong unblock); the WM-* tags mark
    failures of the engine itself (the fixed execution order making a valid
    intent impossible, or state the world model cannot represent).
    """

    LLM_MI = "LLM-MI"
    LLM_PM = "LLM-PM"
    LLM_UL = "LLM-UL"
    WM_PLANNING = "WM-Planning"
    WM_MEMORY = "WM-Memory"


TAG_ORDER: tuple[ErrorTag, ...] = tuple(ErrorTag)


def parse_tags(raw: Iterable[str]) -> list[ErrorTag]:
    """Validate tag strings, case-insensitively, against the closed set."""
    by_key = {tag.value.casefold(): tag for tag in ErrorTag}
    tags = []
    for item in raw:
        tag = by_key.get(item.strip().casefold())
        if tag is None:
            allowed = ", ".join(t.value for t in TAG_ORDER)
            raise ValueError(f"unknown error tag {item!r}; allowed: {allowed}")
        tags.append(tag)
    return tags


def annotate_log(
    path: Union[str, Path],
    turn: int,
    tags: Sequence[str],
    note: Optional[str] = None,
) -> list[ErrorTag]:
    """Append an annotation for one turn of a log.

    Annotating the same turn again replaces the earlier annotation, since
    readers keep only the last annotation line per turn.
    """
    log = load_log(path)
    if not 1 <= turn <= len(log.turns):
        raise UnknownTurnError(
            f"log has {len(log.turns)} turns, cannot annotate turn {turn}"
        )
    parsed = parse_tags(tags)
    LogWriter(path).write_annotation(turn, [t.value for t in parsed], note)
    return parsed


# -- aggregation ---------------------------------------------------------------


@dataclass
class ReportRow:
    """Tag tallies for one scenario and locale."""

    scenario: str
    locale: str
    sessions: int
    counts: Counter

    def count(self, tag: ErrorTag) -> int:
        return self.counts.get(tag, 0)


def _log_tags(log: SessionLog) -> list[ErrorTag]:
    tags: list[ErrorTag] = []
    for turn, annotation in log.annotations.items():
        try:
            tags.extend(parse_tags(annotation["tags"]))
        except ValueError as exc:
            raise MalformedLogError(f"{log.path}: turn {turn}: {exc}") from exc
    return tags


def tally_logs(paths: Iterable[Union[str, Path]]) -> list[ReportRow]:
    """Aggregate annotations from several logs, grouped by scenario/locale."""
    grouped: dict[tuple[str, str], ReportRow] = {}
    for path in paths:
        log = load_log(path)
        key = (log.header.get("scenario", "?"), log.header.get("locale", "?"))
        row = grouped.get(key)
        if row is None:
            row = grouped[key] = ReportRow(
                scenario=key[0], locale=key[1], sessions=0, counts=Counter()
            )
        row.sessions += 1
        row.counts.update(_log_tags(log))
    return [grouped[key] for key in sorted(grouped)]


def collect_log_paths(sources: Iterable[Union[str, Path]]) -> list[Path]:
    """Expand files and directories into a sorted list of .jsonl logs."""
    paths: list[Path] = []
    for source in sources:
        p = Path(source)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.jsonl")))
        else:
            paths.append(p)
    return paths


# -- output --------------------------------------------------------------------

_COLUMNS = ("scenario", "locale", "sessions") + tuple(t.value for t in TAG_ORDER)


def _row_values(row: ReportRow) -> list[str]:
    return [row.scenario, row.locale, str(row.sessions)] + [
        str(row.count(t)) for t in TAG_ORDER
    ]


def render_table(rows: Sequence[ReportRow]) -> str:
    """Aligned plain-text table of the tallies."""
    cells = [list(_COLUMNS)] + [_row_values(r) for r in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(_COLUMNS))]
    out = []
    for line in cells:
        out.append("  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip())
    return "\n".join(out)


def render_csv(rows: Sequence[ReportRow]) -> str:
    """The same tallies as CSV."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for row in rows:
        writer.writerow(_row_values(row))
    return buffer.getvalue()


def render_figure(rows: Sequence[ReportRow], path: Union[str, Path]) -> Path:
    """Draw the tallies as a grouped bar chart and save it to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"{r.scenario}\n{r.locale}" for r in rows]
    positions = range(len(rows))
    width = 0.8 / len(TAG_ORDER)
    fig, ax = plt.subplots(figsize=(max(6.0, 1.8 * len(rows)), 4.0))
    for i, tag in enumerate(TAG_ORDER):
        offsets = [p + (i - (len(TAG_ORDER) - 1) / 2) * width for p in positions]
        ax.bar(offsets, [r.count(tag) for r in rows], width=width, label=tag.value)
    ax.set_xticks(list(positions))
    ax.set_xticklabels(labels)
    ax.set_ylabel("annotated errors")
    ax.set_title("Error annotations by scenario and locale")
    ax.legend(fontsize="small")
    fig.tight_layout()
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out)
    plt.close(fig)
    return out

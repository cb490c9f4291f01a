"""Command line interface.

Subcommands: serve (HTTP service), play (terminal session), replay (log
consistency check), annotate (tag turns with error categories), and report
(aggregate annotations into a table, CSV, and figure).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .analysis import (
    annotate_log,
    collect_log_paths,
    render_csv,
    render_figure,
    render_table,
    tally_logs,
)
from .backends import build_backend, bundled_backend_configs, load_backend_configs
from .errors import BackendError, StoryloomError
from .logs import load_log, replay_log
from .scenarios import load_bundled_scenario, load_scenario
from .session import DEFAULT_TURN_LIMIT, Session


def _fail(exc: BaseException) -> int:
    line = {"error": type(exc).__name__, "detail": str(exc)}
    print(json.dumps(line, ensure_ascii=False), file=sys.stderr)
    return 1


def _resolve_backend(name: str, backends_file: Optional[str]):
    configs = bundled_backend_configs()
    if backends_file:
        configs.update(load_backend_configs(backends_file))
    if name not in configs:
        raise StoryloomError(
            f"unknown backend {name!r}; available: " + ", ".join(sorted(configs))
        )
    return build_backend(configs[name])


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        scenario_dir=args.scenario_dir,
        backends_file=args.backends,
        log_dir=args.log_dir,
        ui_dir=args.ui_dir,
        debug=args.debug,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _cmd_play(args: argparse.Namespace) -> int:
    scenario = (
        load_scenario(args.scenario_file)
        if args.scenario_file
        else load_bundled_scenario(args.scenario)
    )
    backend_name = args.backend or f"{scenario.name}-demo"
    backend = _resolve_backend(backend_name, args.backends)
    session = Session(
        scenario,
        backend,
        locale=args.locale,
        strict_puzzles=args.strict_puzzles,
        turn_limit=args.turn_limit,
        backend_name=backend_name,
        log_path=args.log,
    )
    print(session.scene)
    print()
    while not session.completed and session.turn_count < session.turn_limit:
        try:
            line = input("> ")
        except EOFError:
            print()
            break
        command = line.strip()
        if not command:
            continue
        if command in ("/quit", "/exit"):
            break
        if command == "/scene":
            print(session.scene)
            continue
        try:
            record = session.submit(command)
        except BackendError as exc:
            print(f"[backend error] {exc}")
            continue
        if record.parse_error:
            print("[the reply could not be understood; nothing changed]")
            continue
        if record.narration:
            print(record.narration)
        for report in record.reports:
            if report.reason is not None:
                print(
                    f"[rejected: {report.transformation} ({report.reason.value})]"
                )
    if session.completed:
        print("The objective is complete.")
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    failures = 0
    for path in collect_log_paths(args.logs):
        problems = replay_log(load_log(path))
        if problems:
            failures += 1
            print(f"{path}: INCONSISTENT")
            for problem in problems:
                print(f"  {problem}")
        else:
            print(f"{path}: ok")
    return 1 if failures else 0


def _cmd_annotate(args: argparse.Namespace) -> int:
    tags = [t.strip() for t in args.tags.split(",") if t.strip()]
    annotate_log(args.log, args.turn, tags, args.note)
    print(f"annotated turn {args.turn} of {args.log}: {', '.join(tags)}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    paths = collect_log_paths(args.logs)
    if not paths:
        raise StoryloomError("no logs found")
    rows = tally_logs(paths)
    text = render_csv(rows) if args.format == "csv" else render_table(rows)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        print(f"wrote {out}")
    else:
        print(text)
    figure_path = None
    if not args.no_figure:
        if args.figure:
            figure_path = Path(args.figure)
        elif args.out:
            figure_path = Path(args.out).with_suffix(".png")
    if figure_path is not None:
        render_figure(rows, figure_path)
        print(f"wrote {figure_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="storyloom",
        description="Interactive storytelling engine with a symbolic world model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--scenario-dir", help="directory with extra scenario files")
    serve.add_argument("--backends", help="YAML file with extra backend configs")
    serve.add_argument("--log-dir", help="write one JSON Lines log per session here")
    serve.add_argument("--ui-dir", help="serve this directory as the web UI")
    serve.add_argument("--debug", action="store_true", help="include raw replies and snapshots in responses")
    serve.set_defaults(func=_cmd_serve)

    play = sub.add_parser("play", help="play a scenario in the terminal")
    play.add_argument("--scenario", default="scenario-a", help="bundled scenario name")
    play.add_argument("--scenario-file", help="path to a scenario YAML (overrides --scenario)")
    play.add_argument("--backend", help="backend name (default: <scenario>-demo)")
    play.add_argument("--backends", help="YAML file with extra backend configs")
    play.add_argument("--locale", default="en")
    play.add_argument("--strict-puzzles", action="store_true")
    play.add_argument("--turn-limit", type=int, default=DEFAULT_TURN_LIMIT)
    play.add_argument("--log", help="write the session log to this file")
    play.set_defaults(func=_cmd_play)

    replay = sub.add_parser("replay", help="re-execute logs and check consistency")
    replay.add_argument("logs", nargs="+", help="log files or directories")
    replay.set_defaults(func=_cmd_replay)

    annotate = sub.add_parser("annotate", help="tag a logged turn with error categories")
    annotate.add_argument("log")
    annotate.add_argument("--turn", type=int, required=True)
    annotate.add_argument("--tags", required=True, help="comma-separated error tags")
    annotate.add_argument("--note", help="free-form reviewer note")
    annotate.set_defaults(func=_cmd_annotate)

    report = sub.add_parser("report", help="aggregate annotations across logs")
    report.add_argument("logs", nargs="+", help="log files or directories")
    report.add_argument("--format", choices=("table", "csv"), default="table")
    report.add_argument("--out", help="write the table or CSV here instead of stdout")
    report.add_argument("--figure", help="write the bar chart here")
    report.add_argument(
        "--no-figure", action="store_true", help="skip rendering the bar chart"
    )
    report.set_defaults(func=_cmd_report)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StoryloomError, OSError, ValueError) as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: validate, rank, compose, knapsack, trajectory, serve.  Problems
are loaded from an explicit path, from the directory named by
``MORPHDESIGN_PROBLEM_DIR``, or from the bundled fixtures, in that order.
Output is deterministic; ``--format json`` emits the same payloads the HTTP
service returns.  Exit codes: 2 usage, 3 infeasible instance, 4 I/O or
malformed problem.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from . import solve
from .document import ProblemDocument, parse_problem
from .errors import DocumentError, InfeasibleError

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4

PROBLEM_DIR_ENV = "MORPHDESIGN_PROBLEM_DIR"


def resolve_problem_path(name: str) -> Path:
    """Explicit path first, then $MORPHDESIGN_PROBLEM_DIR, then bundled fixtures."""
    direct = Path(name)
    if direct.is_file():
        return direct
    env_dir = os.environ.get(PROBLEM_DIR_ENV)
    if env_dir:
        for candidate in (Path(env_dir) / name, Path(env_dir) / f"{name}.json"):
            if candidate.is_file():
                return candidate
    bundled = resources.files(__package__).joinpath(f"fixtures/{name}.json")
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no problem named {name!r} (path, ${PROBLEM_DIR_ENV}, or bundled fixture)")


def load_problem(name: str) -> ProblemDocument:
    path = resolve_problem_path(name)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc}") from exc
    return parse_problem(data)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphdesign",
        description="Combinatorial synthesis of modular system configurations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, scenario: bool = True, node: bool = False):
        p.add_argument("--problem", required=True, help="problem path or bundled name")
        p.add_argument("--format", choices=("table", "json"), default="table")
        if scenario:
            p.add_argument("--scenario", help="named scenario (default: first declared)")
        if node:
            p.add_argument("--node", help="restrict to one tree node")

    p = sub.add_parser("validate", help="check a problem document")
    add_common(p, scenario=False)

    p = sub.add_parser("rank", help="priority layers for leaf alternatives")
    add_common(p, node=True)
    p.add_argument(
        "--method",
        choices=("external", "dominance-layers", "weighted-outranking"),
        help="default: external when the scenario carries priorities",
    )

    p = sub.add_parser("compose", help="nondominated composite decisions per node")
    add_common(p, node=True)

    p = sub.add_parser("knapsack", help="relative-utility ordering and budgeted selection")
    add_common(p, scenario=False)
    p.add_argument("--budget", type=int, required=True)

    p = sub.add_parser("trajectory", help="multistage trajectories over the declared stages")
    add_common(p, scenario=False)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", help="problem storage directory (default: ./problems)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DocumentError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (KeyError, ValueError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"usage error: {message}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "serve":
        return _cmd_serve(args)
    if args.command == "validate":
        return _cmd_validate(args)
    doc = load_problem(args.problem)
    if args.command == "rank":
        payload = solve.rank_payload(doc, args.scenario, args.node, args.method)
        render = _render_rank
    elif args.command == "compose":
        payload = solve.compose_payload(doc, args.scenario, args.node)
        render = _render_compose
    elif args.command == "knapsack":
        payload = solve.knapsack_payload(doc, args.budget)
        render = _render_knapsack
    else:
        payload = solve.trajectory_payload(doc)
        render = _render_trajectory
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        render(payload)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        load_problem(args.problem)
    except DocumentError as exc:
        if args.format == "json":
            print(json.dumps({"ok": False, "error": str(exc)}, ensure_ascii=False))
        else:
            print(f"INVALID: {exc}")
        return EXIT_INVALID
    if args.format == "json":
        print(json.dumps({"ok": True}))
    else:
        print("OK")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    data_dir = Path(args.data_dir) if args.data_dir else Path("problems")
    app = create_app(data_dir, seed_fixtures=True)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _render_rank(payload: dict) -> None:
    print(f"scenario: {payload['scenario']}  method: {payload['method']}")
    for leaf, assignment in payload["assignments"].items():
        print(f"{leaf}:")
        for alt, layer in assignment.items():
            print(f"  {alt:8} {layer}")


def _render_compose(payload: dict) -> None:
    print(f"scenario: {payload['scenario']}")
    for node in payload["nodes"]:
        print(f"node {node['id']}: {len(node['decisions'])} decision(s)")
        best_w = max((d["quality"]["w"] for d in node["decisions"]), default=0)
        for d in node["decisions"]:
            line = f"  {d['label']:24} {d['quality']['notation']}"
            if d["quality"]["w"] < best_w:
                floors = [
                    f"({b['alternatives'][0]},{b['alternatives'][1]})={b['value']}"
                    for b in d["bottlenecks"]
                ]
                line += "   bottleneck: " + " ".join(floors)
            print(line)


def _render_knapsack(payload: dict) -> None:
    print(f"{'DA':6} {'r':>2} {'lambda':>7} {'rank':>4}")
    for row in payload["ordering"]:
        print(f"{row['id']:6} {row['utility_priority']:>2} {row['relative_utility']:>7.2f} {row['rank']:>4}")
    sel = payload["selection"]
    print(f"selection (budget {payload['budget']}): {sel['label']}")
    print(f"total cost: {sel['total_cost']}")
    print(f"total relative utility: {sel['total_relative_utility']:.2f}")
    greedy = payload["greedy"]
    print(f"greedy: {greedy['label']} (cost {greedy['total_cost']})")


def _render_trajectory(payload: dict) -> None:
    for stage in payload["stages"]:
        print(f"stage {stage['label']} ({stage['scenario']}): {len(stage['decisions'])} decision(s)")
        for d in stage["decisions"]:
            print(f"  {d['label']:24} {d['quality']['notation']}")
    print(f"change thresholds: {payload['thresholds']}")
    print(f"{len(payload['trajectories'])} nondominated trajectory(ies)")
    for i, t in enumerate(payload["trajectories"], start=1):
        print(f"trajectory {i}: {t['quality']['notation']}")
        for pick in t["picks"]:
            print(f"  {pick['stage']:10} {pick['label']}")


if __name__ == "__main__":
    sys.exit(main())

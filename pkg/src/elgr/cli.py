"""Command-line front door: check, justify, neighbors, repair, serve.

Stdout carries only the machine-consumable artifact (verdict, labels,
neighbors, or the repaired ontology); diagnostics go to stderr. Exit codes:
0 on success, 1 on domain errors (target not entailed, strategy violation,
exhausted budget), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ElParseError, ElgrError
from .justifications import all_justifications, find_one_justification
from .neighbors import syn_one_step_up, upper_neighbors
from .parser import parse_axiom, parse_concept, parse_ontology
from .reasoner import entails
from .render import render_concept, render_ontology
from .repair import (
    MaxStrongStrategy,
    OracleStrategy,
    RepairProblem,
    ScriptedStrategy,
    Strategy,
    TautologyStrategy,
    classical_repair,
    gentle_repair,
    modified_gentle_repair,
    parse_script,
)
from .weakening import relation_by_kind

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elgr", description="gentle repair of EL ontologies"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide whether a consequence holds")
    check.add_argument("file", help="ontology file")
    check.add_argument("--query", required=True, help="axiom to check")

    justify = sub.add_parser("justify", help="compute justifications")
    justify.add_argument("file")
    justify.add_argument("--query", required=True)
    justify.add_argument("--all", action="store_true", help="enumerate all")
    justify.add_argument("--search-budget", type=int, default=None)

    neighbors = sub.add_parser("neighbors", help="print upper neighbors")
    neighbors.add_argument("--concept", required=True)
    neighbors.add_argument(
        "--syn", action="store_true", help="one-step syntactic generalizations"
    )

    repair = sub.add_parser("repair", help="repair away a consequence")
    repair.add_argument("file")
    repair.add_argument("--query", required=True)
    repair.add_argument(
        "--algorithm",
        choices=("classical", "gentle", "modified"),
        default="modified",
    )
    repair.add_argument("--weakening", choices=("sub", "syn"), default="syn")
    repair.add_argument(
        "--strategy",
        default="max-strong",
        help="tautology | oracle | max-strong | scripted:<file>",
    )
    repair.add_argument("--trace", help="write the JSON trace here")
    repair.add_argument("--search-budget", type=int, default=None)

    serve = sub.add_parser("serve", help="run the repair-session service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--state-dir", default=None)
    serve.add_argument("--ui-dir", default=None)
    serve.add_argument("--search-budget", type=int, default=None)

    return parser


def _make_strategy(spec: str, weakening: str, budget: int | None) -> Strategy:
    relation = relation_by_kind(weakening)
    if spec == "tautology":
        return TautologyStrategy()
    if spec == "oracle":
        return OracleStrategy(relation, budget)
    if spec == "max-strong":
        return MaxStrongStrategy(relation, budget)
    if spec.startswith("scripted:"):
        path = spec.split(":", 1)[1]
        return ScriptedStrategy(parse_script(Path(path).read_text(encoding="utf-8")))
    raise ValueError(f"unknown strategy {spec!r}")


def _cmd_check(args: argparse.Namespace) -> int:
    ontology = parse_ontology(Path(args.file).read_text(encoding="utf-8"))
    query = parse_axiom(args.query)
    verdict = entails(ontology.axioms, query)
    print("entailed" if verdict else "not-entailed")
    return 0


def _cmd_justify(args: argparse.Namespace) -> int:
    ontology = parse_ontology(Path(args.file).read_text(encoding="utf-8"))
    query = parse_axiom(args.query)
    if args.all:
        justs = all_justifications(ontology, query, args.search_budget)
    else:
        justs = (find_one_justification(ontology, query),)
    for j in justs:
        print(" ".join(j.labels))
    return 0


def _cmd_neighbors(args: argparse.Namespace) -> int:
    concept = parse_concept(args.concept)
    if args.syn:
        out = syn_one_step_up(concept)
    else:
        out = upper_neighbors(concept).neighbors
    for c in out:
        print(render_concept(c))
    return 0


def _cmd_repair(args: argparse.Namespace) -> int:
    ontology = parse_ontology(Path(args.file).read_text(encoding="utf-8"))
    query = parse_axiom(args.query)
    problem = RepairProblem(ontology, query)
    if args.algorithm == "classical":
        result, trace = classical_repair(problem)
    else:
        strategy = _make_strategy(args.strategy, args.weakening, args.search_budget)
        relation = relation_by_kind(args.weakening)
        run = gentle_repair if args.algorithm == "gentle" else modified_gentle_repair
        result, trace = run(problem, strategy, relation)
    if args.trace:
        Path(args.trace).write_text(trace.to_json(), encoding="utf-8")
    sys.stdout.write(render_ontology(result))
    print(
        f"repaired in {trace.iteration_count} iteration(s)",
        file=sys.stderr,
    )
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    ui_dir = args.ui_dir
    if ui_dir is None:
        default_ui = Path.cwd() / "frontend" / "dist"
        if default_ui.is_dir():
            ui_dir = str(default_ui)
    app = create_app(
        state_dir=args.state_dir,
        ui_dir=ui_dir,
        search_budget=args.search_budget,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": _cmd_check,
        "justify": _cmd_justify,
        "neighbors": _cmd_neighbors,
        "repair": _cmd_repair,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except ElParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ElgrError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

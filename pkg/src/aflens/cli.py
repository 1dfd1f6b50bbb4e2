"""Command-line front end: validate, solve, explain, render, serve.

Exit codes are a stable contract: 0 on success, 1 when the input (file
contents, indexes, edge names) is at fault, 2 when the invocation
itself is malformed. All outputs are byte-stable for equal inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import layout as layout_mod
from .explain import SearchBounds, explain_solution, explanation_document
from .formats import ParseError, format_for_path, parse
from .grounded import grounded
from .model import Attack, Framework
from .semantics import Semantics, enumerate_labellings, solution_set_document

PROG = "aflens"


class CliError(Exception):
    """Input-level failure; maps to exit code 1."""


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG, description="Explore argumentation frameworks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="framework file, or - for stdin")
        p.add_argument(
            "--format", choices=["apx", "tgf", "json"], help="override format sniffing"
        )

    p = sub.add_parser("validate", help="parse a framework and report its size")
    add_input(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="enumerate labellings under a semantics")
    add_input(p)
    p.add_argument(
        "--semantics",
        choices=[s.value for s in Semantics],
        default="grounded",
    )
    p.add_argument("--output-format", choices=["json", "text"], default="json")
    p.add_argument("--out", help="write to this path instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("explain", help="critical attack sets for a stable solution")
    add_input(p)
    p.add_argument("--solution", type=int, default=0, help="stable solution index")
    p.add_argument("--candidates", choices=["failing", "all-undec"], default="failing")
    p.add_argument("--max-delta", type=int, default=SearchBounds.max_cardinality)
    p.add_argument("--max-tests", type=int, default=SearchBounds.max_tests)
    p.add_argument("--out", help="write to this path instead of stdout")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("render", help="draw the framework as DOT or layout JSON")
    add_input(p)
    p.add_argument("--solution", type=int, help="overlay this stable solution")
    p.add_argument(
        "--suspend",
        metavar="a,b[;c,d]",
        help="what-if view with these attacks suspended",
    )
    p.add_argument("--candidates", choices=["failing", "all-undec"], default="failing")
    p.add_argument("--max-delta", type=int, default=SearchBounds.max_cardinality)
    p.add_argument("--max-tests", type=int, default=SearchBounds.max_tests)
    p.add_argument("--output-format", choices=["dot", "json"], default="dot")
    p.add_argument("--out", help="write to this path instead of stdout")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument(
        "--cors-origin",
        action="append",
        default=[],
        help="origin allowed by CORS; repeatable",
    )
    p.add_argument("--max-sessions", type=int, default=100)
    p.add_argument("--session-ttl", type=float, default=3600.0)
    p.set_defaults(func=cmd_serve)

    return parser


# --- shared plumbing ---------------------------------------------------


def _load(args, parser: argparse.ArgumentParser) -> Framework:
    if args.input == "-":
        if not args.format:
            parser.error("--format is required when reading from stdin")
        text = sys.stdin.read()
        fmt = args.format
    else:
        try:
            with open(args.input, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise CliError(f"cannot read {args.input}: {exc.strerror}") from exc
        fmt = args.format or format_for_path(args.input)
        if fmt is None:
            raise CliError(
                f"cannot infer format from {args.input!r}; pass --format"
            )
    try:
        return parse(text, fmt)
    except ParseError as exc:
        raise CliError(str(exc)) from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _dump(document: dict) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _stable_solution(framework: Framework, index: int) -> dict:
    solutions = enumerate_labellings(framework, Semantics.STABLE)
    if not 0 <= index < len(solutions.solutions):
        raise CliError(
            f"solution index {index} out of range "
            f"({len(solutions.solutions)} stable solutions)"
        )
    return solutions.solutions[index]


def _parse_suspensions(text: str) -> list[Attack]:
    attacks = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [part.strip() for part in chunk.split(",")]
        if len(parts) != 2 or not all(parts):
            raise CliError(f"cannot parse suspension {chunk!r}; expected a,b[;c,d]")
        attacks.append(Attack(parts[0], parts[1]))
    return attacks


# --- commands ----------------------------------------------------------


def cmd_validate(args, parser) -> int:
    framework = _load(args, parser)
    print(f"ok: {len(framework.arguments)} arguments, {len(framework.attacks)} attacks")
    return 0


def cmd_solve(args, parser) -> int:
    framework = _load(args, parser)
    solutions = enumerate_labellings(framework, Semantics(args.semantics))
    if args.output_format == "json":
        _emit(_dump(solution_set_document(solutions)), args.out)
        return 0
    lines = [f"semantics: {solutions.semantics.value}", f"count: {len(solutions.solutions)}"]
    if solutions.truncated:
        lines.append("truncated: true")
    for i, labelling in enumerate(solutions.solutions):
        cells = " ".join(f"{name}={labelling[name].value}" for name in framework.arguments)
        lines.append(f"S{i}: {cells}" if cells else f"S{i}:")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_explain(args, parser) -> int:
    framework = _load(args, parser)
    target = _stable_solution(framework, args.solution)
    base = grounded(framework)
    explanation = explain_solution(
        framework,
        base,
        target,
        args.solution,
        bounds=SearchBounds(max_cardinality=args.max_delta, max_tests=args.max_tests),
        candidates=args.candidates,
    )
    _emit(_dump(explanation_document(explanation)), args.out)
    return 0


def cmd_render(args, parser) -> int:
    if args.solution is not None and args.suspend is not None:
        parser.error("--solution and --suspend are mutually exclusive")
    framework = _load(args, parser)
    base = grounded(framework)
    if args.suspend is not None:
        try:
            view = layout_mod.suspension_view(
                framework, base, _parse_suspensions(args.suspend)
            )
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    elif args.solution is not None:
        target = _stable_solution(framework, args.solution)
        explanation = explain_solution(
            framework,
            base,
            target,
            args.solution,
            bounds=SearchBounds(max_cardinality=args.max_delta, max_tests=args.max_tests),
            candidates=args.candidates,
        )
        if explanation.critical_sets:
            # Show the first critical attack set alongside the overlay.
            view = layout_mod.suspension_view(
                framework, base, explanation.critical_sets[0].edges
            )
        else:
            view = layout_mod.overlay_view(framework, base, target)
    else:
        view = layout_mod.base_view(framework, base)
    if args.output_format == "dot":
        _emit(layout_mod.export_dot(view), args.out)
    else:
        _emit(layout_mod.export_layout_json(view), args.out)
    return 0


def cmd_serve(args, parser) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    config = ServiceConfig(
        max_sessions=args.max_sessions,
        session_ttl=args.session_ttl,
        cors_origins=tuple(args.cors_origin),
    )
    try:
        uvicorn.run(create_app(config), host=args.host, port=args.port, log_level="info")
    except (OSError, SystemExit) as exc:
        print(f"error: cannot serve on {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

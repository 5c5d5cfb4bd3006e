"""Command-line entry point.

Subcommands: tau, verify, play, check, replay, serve.  Exit codes follow
sysexits conventions where they apply: 0 success, 2 square/counterexample
found (a finding, not a failure), 64 usage errors, 74 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import arena
from .detector import find_square
from .errors import DepthError, DivergenceError, InvalidLetter, ParseError, ThueArenaError
from .thue import tau_prefix, tau_via_thue_morse_prefix
from .words import Mode, parse_letter

EXIT_OK = 0
EXIT_FOUND = 2
EXIT_USAGE = 64
EXIT_IO = 74


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through exit code 64."""

    def error(self, message):
        raise _UsageError(message)


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative_int(raw: str) -> int:
    value = int(raw)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="thue-arena", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    p_tau = sub.add_parser("tau", help="print a prefix of the ternary square-free word")
    p_tau.add_argument("--length", type=_non_negative_int, required=True,
                       help="number of characters to print")
    p_tau.add_argument("--oracle", action="store_true",
                       help="derive the prefix from the binary parity word instead of the morphism")

    p_verify = sub.add_parser("verify", help="exhaustively check all Ben move sequences")
    p_verify.add_argument("--depth", type=_positive_int, required=True,
                          help="number of Ben moves per sequence")
    p_verify.add_argument("--mode", choices=[m.token for m in Mode], default=Mode.ANN_STARTS.token)
    p_verify.add_argument("--jobs", type=_positive_int, default=1)
    p_verify.add_argument("--min-period", type=_positive_int, default=2)
    p_verify.add_argument("--kernel", choices=["c", "python"], default=None,
                          help="search kernel (default: fastest available)")
    p_verify.add_argument("--format", choices=["json", "text"], default="json")

    p_play = sub.add_parser("play", help="play one game against a scripted or synthetic Ben")
    p_play.add_argument("--ben", required=True, choices=["random", "mirror", "greedy", "scripted"],
                        help="adversary kind")
    p_play.add_argument("--rounds", type=_positive_int, default=50)
    p_play.add_argument("--seed", type=int, default=None,
                        help="seed for the random adversary; generated and echoed when omitted")
    p_play.add_argument("--mode", choices=[m.token for m in Mode], default=Mode.ANN_STARTS.token)
    p_play.add_argument("--min-period", type=_positive_int, default=2)
    p_play.add_argument("--moves", default=None,
                        help="comma-separated letter tokens for the scripted adversary")

    p_check = sub.add_parser("check", help="scan a word file for squares")
    p_check.add_argument("file", help="file of whitespace-separated letter tokens, or - for stdin")
    p_check.add_argument("--min-period", type=_positive_int, default=2)

    p_replay = sub.add_parser("replay", help="re-run a trace through the strategy and report")
    p_replay.add_argument("file", help="trace file, game record JSON, or verification report JSON; - for stdin")
    p_replay.add_argument("--min-period", type=_positive_int, default=None)

    p_serve = sub.add_parser("serve", help="run the HTTP session service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--trace-dir", default=None,
                         help="directory for per-session trace files")
    p_serve.add_argument("--debug", action="store_true",
                         help="enable the replay-consistency endpoint")
    p_serve.add_argument("--cors-origin", default="*")

    return parser


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_tau(args) -> int:
    word = tau_via_thue_morse_prefix(args.length) if args.oracle else tau_prefix(args.length)
    print(word)
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = arena.exhaustive_verify(
        Mode.parse(args.mode), args.depth, min_period=args.min_period,
        jobs=args.jobs, kernel=args.kernel,
    )
    if args.format == "json":
        print(report.to_json())
    else:
        if report.counterexample is None and not report.invariant_violations:
            print(f"clean: {report.nodes_visited} sequences at depth {report.depth}, "
                  f"{report.elapsed_ms:.0f} ms")
        else:
            print(f"counterexample after {report.nodes_visited} clean sequences:")
            if report.counterexample is not None:
                for line in report.counterexample.trace_lines():
                    print(f"  {line}")
                w = report.counterexample.witness
                print(f"  square at {w.start} period {w.period}")
            for violation in report.invariant_violations:
                print(f"  invariant {violation.kind} at position {violation.position}")
    found = report.counterexample is not None or report.invariant_violations
    return EXIT_FOUND if found else EXIT_OK


def _cmd_play(args) -> int:
    seed = args.seed
    if args.ben == "random" and seed is None:
        import secrets

        seed = secrets.randbelow(2 ** 32)
    moves = None
    if args.moves is not None:
        moves = [parse_letter(token) for token in args.moves.replace(",", " ").split()]
    adversary = arena.make_adversary(args.ben, seed=seed, moves=moves)
    record = arena.play_game(Mode.parse(args.mode), adversary, rounds=args.rounds,
                             min_period=args.min_period)
    sys.stdout.write(record.to_trace())
    if record.witness is not None:
        w = record.witness
        print(f"# square at {w.start} period {w.period}")
        return EXIT_FOUND
    return EXIT_OK


def _cmd_check(args) -> int:
    text = _read_input(args.file)
    word = [parse_letter(token) for token in text.split()]
    witness = find_square(word, min_period=args.min_period)
    if witness is None:
        print("square-free")
        return EXIT_OK
    print(f"square at {witness.start} period {witness.period}")
    return EXIT_FOUND


def _trace_from_report(data: dict) -> Optional[str]:
    """Extract replayable trace text from record or report JSON."""
    if "trace" in data and isinstance(data["trace"], list):
        lines = [f"# mode={data['mode']}"] if "mode" in data else []
        if data.get("min_period", 2) != 2:
            lines.append(f"# min_period={data['min_period']}")
        lines.extend(data["trace"])
        return "\n".join(lines) + "\n"
    if "counterexample" in data:
        cex = data["counterexample"]
        if cex is None:
            return None
        lines = [f"# mode={data['mode']}"] if "mode" in data else []
        lines.extend(cex["trace"])
        return "\n".join(lines) + "\n"
    raise ParseError("JSON input has neither a trace nor a counterexample field")


def _cmd_replay(args) -> int:
    text = _read_input(args.file)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        trace = _trace_from_report(json.loads(text))
        if trace is None:
            print("no counterexample to replay")
            return EXIT_OK
        text = trace
    record = arena.replay(text, min_period=args.min_period)
    print(json.dumps(record.to_dict(), indent=2))
    return EXIT_FOUND if record.witness is not None else EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(trace_dir=args.trace_dir, debug=args.debug,
                     cors_origin=args.cors_origin)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


_COMMANDS = {
    "tau": _cmd_tau,
    "verify": _cmd_verify,
    "play": _cmd_play,
    "check": _cmd_check,
    "replay": _cmd_replay,
    "serve": _cmd_serve,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.subcommand is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return _COMMANDS[args.subcommand](args)
    except _UsageError as exc:
        print(f"thue-arena: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ParseError, InvalidLetter, DivergenceError, DepthError, ValueError) as exc:
        print(f"thue-arena: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"thue-arena: {exc}", file=sys.stderr)
        return EXIT_IO
    except ThueArenaError as exc:
        print(f"thue-arena: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Game driving and bounded-exhaustive verification.

play_game runs Ann's strategy against a Ben adversary and records the
trace.  exhaustive_verify enumerates every Ben move sequence up to a
depth, checking after each appended letter that no square of period >=
min_period ends there and that the strategy invariants hold.  The hot
search loop lives in a kernel: a compiled extension when available, a
pure-Python twin otherwise (THUE_ARENA_KERNEL=python|c forces the
choice).

Trace files carry one move per line ("A 0a" / "B 1c") after comment
headers like "# mode=ann-starts"; replay re-executes Ann's strategy
against the recorded Ben moves and fails on any divergence.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from . import _search_py
from .detector import IncrementalChecker, near_square_threat
from .errors import DepthError, DivergenceError, ParseError
from .strategy import AnnState, initial_state, respond
from .thue import tau_codes_prefix
from .words import ALPHABET, GameWord, Letter, Mode, SquareWitness, parse_letter

MAX_NODES_ENV = "THUE_ARENA_MAX_NODES"
KERNEL_ENV = "THUE_ARENA_KERNEL"
DEFAULT_MAX_NODES = 100_000_000

Move = tuple[str, Letter]  # ("A" | "B", letter)


# ---------------------------------------------------------------------------
# Kernel selection

try:  # compiled search kernel; optional
    from . import _speedups  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on the build
    _speedups = None


def available_kernels() -> tuple[str, ...]:
    return ("c", "python") if _speedups is not None else ("python",)


def get_kernel(name: Optional[str] = None):
    """Resolve a search kernel module by name, or pick the default.

    The default prefers the compiled extension and falls back to the
    pure-Python twin; THUE_ARENA_KERNEL overrides it.
    """
    if name is None:
        name = os.environ.get(KERNEL_ENV) or ("c" if _speedups is not None else "python")
    if name in ("python", "py"):
        return _search_py
    if name == "c":
        if _speedups is None:
            raise RuntimeError("compiled kernel requested but thue_arena._speedups is not built")
        return _speedups
    raise ValueError(f"unknown kernel {name!r} (expected 'c' or 'python')")


def active_kernel_name() -> str:
    return get_kernel().KERNEL_NAME


# ---------------------------------------------------------------------------
# Ben adversaries

class BenAdversary:
    """Supplies Ben's moves.  kind identifies the flavor for reports."""

    kind = "abstract"

    def choose(self, word: Sequence[Letter]) -> Letter:
        raise NotImplementedError


class RandomBen(BenAdversary):
    """Uniform random letters from a seeded generator."""

    kind = "random"

    def __init__(self, seed: int) -> None:
        self.seed = seed
        self._rng = random.Random(seed)

    def choose(self, word: Sequence[Letter]) -> Letter:
        return ALPHABET[self._rng.randrange(7)]


class MirrorBen(BenAdversary):
    """Repeats Ann's last letter; opens with (0,a) when there is none."""

    kind = "mirror"

    def choose(self, word: Sequence[Letter]) -> Letter:
        return word[-1] if word else ALPHABET[0]


class GreedyBen(BenAdversary):
    """Builds the longest near-square: picks the letter maximizing the
    largest p >= 2 whose period-p square would be one letter short after
    the move; ties resolve in letter enumeration order."""

    kind = "greedy"

    def choose(self, word: Sequence[Letter]) -> Letter:
        best = ALPHABET[0]
        best_threat = -1
        buf = list(word)
        for letter in ALPHABET:
            buf.append(letter)
            threat = near_square_threat(buf)
            buf.pop()
            if threat > best_threat:
                best, best_threat = letter, threat
        return best


class ScriptedBen(BenAdversary):
    """Plays a fixed move list, cycling when it runs out."""

    kind = "scripted"

    def __init__(self, moves: Sequence[Letter]) -> None:
        if not moves:
            raise ValueError("scripted adversary needs at least one move")
        self.moves = tuple(moves)
        self._next = 0

    def choose(self, word: Sequence[Letter]) -> Letter:
        move = self.moves[self._next]
        self._next = (self._next + 1) % len(self.moves)
        return move


def make_adversary(kind: str, seed: Optional[int] = None,
                   moves: Optional[Sequence[Letter]] = None) -> BenAdversary:
    if kind == "random":
        if seed is None:
            raise ValueError("random adversary needs a seed")
        return RandomBen(seed)
    if kind == "mirror":
        return MirrorBen()
    if kind == "greedy":
        return GreedyBen()
    if kind == "scripted":
        if not moves:
            raise ValueError("scripted adversary needs --moves")
        return ScriptedBen(moves)
    raise ValueError(f"unknown adversary kind {kind!r}")


# ---------------------------------------------------------------------------
# Game records and traces

@dataclass(frozen=True)
class GameRecord:
    """A finished (or stopped) game with full attribution.

    The game ends early at the first square of period >= min_period;
    period-1 squares are only logged.  unary_squares holds their start
    positions in order of appearance.
    """

    mode: Mode
    moves: tuple[Move, ...]
    witness: Optional[SquareWitness]
    unary_squares: tuple[int, ...] = ()
    min_period: int = 2
    seed: Optional[int] = None

    @property
    def word(self) -> GameWord:
        return GameWord(tuple(letter for _, letter in self.moves), self.mode)

    def to_trace(self) -> str:
        lines = [f"# mode={self.mode.token}"]
        if self.min_period != 2:
            lines.append(f"# min_period={self.min_period}")
        if self.seed is not None:
            lines.append(f"# seed={self.seed}")
        lines.extend(f"{player} {letter.token}" for player, letter in self.moves)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.token,
            "min_period": self.min_period,
            "seed": self.seed,
            "trace": [f"{player} {letter.token}" for player, letter in self.moves],
            "witness": _witness_dict(self.witness),
            "unary_squares": list(self.unary_squares),
        }


def _witness_dict(witness: Optional[SquareWitness]) -> Optional[dict]:
    if witness is None:
        return None
    return {"start": witness.start, "period": witness.period}


def parse_trace(text: str) -> tuple[Mode, int, Optional[int], list[Move]]:
    """Parse trace text into (mode, min_period, seed, moves).

    Comment lines other than the recognized headers are ignored; the mode
    defaults to ann-starts when no header is present (only sensible for
    empty traces, but harmless otherwise).
    """
    mode = Mode.ANN_STARTS
    min_period = 2
    seed: Optional[int] = None
    moves: list[Move] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("mode="):
                mode = Mode.parse(body[5:].strip())
            elif body.startswith("min_period="):
                min_period = int(body[11:].strip())
            elif body.startswith("seed="):
                seed = int(body[5:].strip())
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("A", "B"):
            raise ParseError(f"bad trace line {lineno}: {raw!r}")
        moves.append((parts[0], parse_letter(parts[1])))
    return mode, min_period, seed, moves


# ---------------------------------------------------------------------------
# Playing

def play_game(mode: Mode, adversary: BenAdversary, rounds: int,
              min_period: int = 2) -> GameRecord:
    """Alternate moves for ``rounds`` Ben plies (or until a square).

    Every appended letter is run through the incremental checker; the
    first square of period >= min_period ends the game and is recorded.
    Doubled letters (period 1) are logged but never terminal when
    min_period >= 2.
    """
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    checker = IncrementalChecker(min_period=min_period)
    letters: list[Letter] = []
    moves: list[Move] = []
    unary: list[int] = []
    witness: Optional[SquareWitness] = None

    def push(player: str, letter: Letter) -> Optional[SquareWitness]:
        letters.append(letter)
        moves.append((player, letter))
        if len(letters) >= 2 and letters[-1] == letters[-2]:
            unary.append(len(letters) - 2)
        return checker.append_and_check(letter)

    opening, state = initial_state(mode)
    if opening is not None:
        witness = push("A", opening)
    for _ in range(rounds):
        if witness is not None:
            break
        ben = adversary.choose(tuple(letters))
        if not isinstance(ben, Letter):
            raise TypeError(f"adversary returned {ben!r}, not a Letter")
        witness = push("B", ben)
        if witness is not None:
            break
        ann, state = respond(state, ben)
        witness = push("A", ann)

    seed = adversary.seed if isinstance(adversary, RandomBen) else None
    return GameRecord(mode=mode, moves=tuple(moves), witness=witness,
                      unary_squares=tuple(unary), min_period=min_period, seed=seed)


def replay(trace: str, min_period: Optional[int] = None) -> GameRecord:
    """Re-execute a trace through the strategy; fail on any divergence.

    ``trace`` is trace-file text.  Recorded Ann moves must equal the
    recomputed ones move for move, including the terminal behavior: a
    game that ended in a square must not continue past it.
    """
    mode, trace_min_period, seed, moves = parse_trace(trace)
    if min_period is None:
        min_period = trace_min_period
    if not moves:
        return GameRecord(mode=mode, moves=(), witness=None,
                          unary_squares=(), min_period=min_period, seed=seed)

    record = _drive(mode, [letter for player, letter in moves if player == "B"],
                    min_period, expected=moves)
    return GameRecord(mode=record.mode, moves=record.moves, witness=record.witness,
                      unary_squares=record.unary_squares, min_period=min_period, seed=seed)


def _drive(mode: Mode, ben_moves: Sequence[Letter], min_period: int,
           expected: Optional[Sequence[Move]] = None) -> GameRecord:
    """Run the strategy against a fixed Ben move list.

    With ``expected`` the generated moves are compared against a recorded
    trace position by position, raising DivergenceError on mismatch.
    """
    checker = IncrementalChecker(min_period=min_period)
    letters: list[Letter] = []
    moves: list[Move] = []
    unary: list[int] = []
    witness: Optional[SquareWitness] = None

    def push(player: str, letter: Letter) -> Optional[SquareWitness]:
        position = len(letters)
        if expected is not None:
            if position >= len(expected):
                raise DivergenceError(
                    f"trace ends at move {position} but the game continues with {player} {letter.token}"
                )
            want_player, want_letter = expected[position]
            if want_player != player or (player == "A" and want_letter != letter):
                raise DivergenceError(
                    f"move {position}: trace has {want_player} {want_letter.token}, "
                    f"strategy produced {player} {letter.token}"
                )
        letters.append(letter)
        moves.append((player, letter))
        if len(letters) >= 2 and letters[-1] == letters[-2]:
            unary.append(len(letters) - 2)
        return checker.append_and_check(letter)

    opening, state = initial_state(mode)
    if opening is not None:
        witness = push("A", opening)
    for ben in ben_moves:
        if witness is not None:
            raise DivergenceError(
                "trace continues after a terminal square at "
                f"start={witness.start} period={witness.period}"
            )
        witness = push("B", ben)
        if witness is not None:
            break
        ann, state = respond(state, ben)
        witness = push("A", ann)

    if expected is not None and len(moves) < len(expected):
        raise DivergenceError(
            f"trace has {len(expected)} moves but the game stopped after {len(moves)}"
        )
    return GameRecord(mode=mode, moves=tuple(moves), witness=witness,
                      unary_squares=tuple(unary), min_period=min_period)


# ---------------------------------------------------------------------------
# Exhaustive verification

@dataclass(frozen=True)
class Counterexample:
    """A Ben line that produced a square, replayable deterministically."""

    moves: tuple[Move, ...]
    witness: SquareWitness

    def trace_lines(self) -> list[str]:
        return [f"{player} {letter.token}" for player, letter in self.moves]


@dataclass(frozen=True)
class InvariantViolation:
    """A strategy invariant that failed during the search."""

    kind: str
    moves: tuple[Move, ...]
    position: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "trace": [f"{player} {letter.token}" for player, letter in self.moves],
            "position": self.position,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of an exhaustive search over Ben's move sequences."""

    mode: Mode
    depth: int
    nodes_visited: int
    counterexample: Optional[Counterexample]
    invariant_violations: tuple[InvariantViolation, ...] = ()
    elapsed_ms: float = 0.0

    def core(self) -> dict:
        """Everything except timing; two equivalent runs must agree on this."""
        return {
            "mode": self.mode.token,
            "depth": self.depth,
            "nodes": self.nodes_visited,
            "counterexample": None if self.counterexample is None else {
                "trace": self.counterexample.trace_lines(),
                "witness": _witness_dict(self.counterexample.witness),
            },
            "invariant_violations": [v.to_dict() for v in self.invariant_violations],
        }

    def to_dict(self) -> dict:
        data = self.core()
        data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def max_nodes_limit() -> int:
    raw = os.environ.get(MAX_NODES_ENV)
    if raw is None:
        return DEFAULT_MAX_NODES
    try:
        return int(raw)
    except ValueError:
        raise DepthError(f"{MAX_NODES_ENV} must be an integer, got {raw!r}") from None


def exhaustive_verify(mode: Mode, depth: int, min_period: int = 2,
                      jobs: int = 1, kernel: Optional[str] = None) -> VerificationReport:
    """Check all 7**depth Ben move sequences against Ann's strategy.

    Ann's replies are deterministic, so the game tree has exactly one
    branch per Ben letter.  Nothing is pruned; nodes_visited counts the
    completed Ben sequences and equals 7**depth on a clean run.  The
    first finding in depth-first order (letter enumeration order) aborts
    the search and is reported.

    jobs > 1 partitions the tree by Ben's first moves into independent
    subtrees searched in worker processes; reports are merged so the
    result is identical to a single-threaded run.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    leaves = 7 ** depth
    limit = max_nodes_limit()
    if leaves > limit:
        raise DepthError(
            f"depth {depth} means {leaves} Ben sequences, beyond the cap of {limit} "
            f"(raise {MAX_NODES_ENV} to allow it)"
        )
    kernel_name = get_kernel(kernel).KERNEL_NAME
    ann_starts = mode is Mode.ANN_STARTS
    tau_codes = tau_codes_prefix(depth + 8)

    start = time.perf_counter()
    if jobs <= 1:
        outcomes = [get_kernel(kernel_name).search(ann_starts, depth, min_period, b"", tau_codes)]
    else:
        split = min(2, depth)
        prefixes = [bytes(p) for p in product(range(7), repeat=split)]
        args = [(kernel_name, ann_starts, depth, min_period, prefix, tau_codes)
                for prefix in prefixes]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_search_worker, args, chunksize=4))
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    nodes = 0
    violation = None
    for sub_nodes, sub_violation in outcomes:
        nodes += sub_nodes
        if sub_violation is not None:
            violation = sub_violation
            break

    counterexample = None
    violations: tuple[InvariantViolation, ...] = ()
    if violation is not None:
        kind, ben_seq, w_start, w_period, position = violation
        ben_letters = [ALPHABET[code] for code in ben_seq]
        record = _drive(mode, ben_letters, min_period)
        if kind == _search_py.VIOLATION_SQUARE:
            reported = SquareWitness(w_start, w_period)
            if record.witness != reported or not reported.holds_in(record.word):
                raise RuntimeError(
                    f"kernel reported witness {reported} but the replay found {record.witness}; "
                    "kernel and strategy module disagree"
                )
            counterexample = Counterexample(moves=record.moves, witness=reported)
        else:
            violations = (InvariantViolation(kind=kind, moves=record.moves, position=position),)

    return VerificationReport(
        mode=mode,
        depth=depth,
        nodes_visited=nodes,
        counterexample=counterexample,
        invariant_violations=violations,
        elapsed_ms=elapsed_ms,
    )


def _search_worker(args) -> tuple[int, Optional[tuple]]:
    kernel_name, ann_starts, depth, min_period, prefix, tau_codes = args
    return get_kernel(kernel_name).search(ann_starts, depth, min_period, prefix, tau_codes)

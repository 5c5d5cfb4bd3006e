"""Pure-Python exhaustive search kernel.

Walks every Ben move sequence of a given depth in letter enumeration
order, computes Ann's deterministic replies, and checks after every
appended letter for squares ending there plus the strategy invariants
(no (2,d) twice in a row from Ann, Ann's track always differs from Ben's
latest).  Mirrors thue_arena._speedups exactly; the compiled kernel is
preferred at import time when available.

Letters are the integer codes 0..6; colors come precomputed as a bytes
prefix of the ternary Thue word.
"""

from __future__ import annotations

from typing import Optional

KERNEL_NAME = "python"

TRACK = (0, 0, 0, 1, 1, 1, 2)

VIOLATION_SQUARE = "square"
VIOLATION_DOUBLE_2D = "double-2d"
VIOLATION_TRACK_MATCH = "track-match"
VIOLATION_PERIOD3 = "period3-square"

_ALL_MOVES = tuple(range(7))


def _build_track_table() -> tuple:
    """table[fav][prev][move] -> Ann's next favourite track; -1 marks
    combinations the strategy can never reach."""
    table = []
    for fav in range(3):
        by_prev = []
        for prev in range(3):
            row = []
            for move in range(3):
                if fav == 2:
                    if move == 0:
                        row.append(1)
                    elif move == 1:
                        row.append(0)
                    else:
                        row.append(1 - prev if prev in (0, 1) else -1)
                elif move == fav:
                    row.append(3 - prev - move if prev != fav else -1)
                else:
                    row.append(fav)
            by_prev.append(tuple(row))
        table.append(tuple(by_prev))
    return tuple(table)


TRACK_TABLE = _build_track_table()


class _ViolationSignal(Exception):
    def __init__(self, kind: str, ben_seq: bytes, start: int, period: int, position: int):
        super().__init__(kind)
        self.data = (kind, ben_seq, start, period, position)


def search(
    ann_starts: bool,
    depth: int,
    min_period: int,
    prefix: bytes,
    tau_codes: bytes,
) -> tuple[int, Optional[tuple]]:
    """Search the subtree where Ben's first moves follow ``prefix``.

    Returns (nodes, violation): nodes counts the Ben sequences of length
    ``depth`` completed without any finding; violation is None or a tuple
    (kind, ben_moves_so_far, witness_start, witness_period, position) for
    the first finding in depth-first order.  position is the 0-based word
    index of the append that triggered it; witness fields are -1 unless
    kind names a square.  A violation aborts the search immediately, so
    nodes then counts only the leaves completed before it.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if min_period < 1:
        raise ValueError(f"min_period must be >= 1, got {min_period}")
    if len(prefix) > depth:
        raise ValueError("prefix longer than depth")
    if len(tau_codes) < depth + 2:
        raise ValueError("tau prefix too short for this depth")

    word: list[int] = [0] if ann_starts else []
    ben_moves: list[int] = []
    nodes = 0
    table = TRACK_TABLE
    track = TRACK
    explicit_p3 = min_period > 3

    def check_append() -> None:
        """Inspect squares ending at the last position; raise on findings."""
        n = len(word)
        for p in range(min_period, n // 2 + 1):
            lo = n - 2 * p
            mid = n - p
            k = 0
            while k < p and word[lo + k] == word[mid + k]:
                k += 1
            if k == p:
                raise _ViolationSignal(VIOLATION_SQUARE, bytes(ben_moves), lo, p, n - 1)
        if explicit_p3 and n >= 6:
            lo = n - 6
            if word[lo] == word[lo + 3] and word[lo + 1] == word[lo + 4] and word[lo + 2] == word[lo + 5]:
                raise _ViolationSignal(VIOLATION_PERIOD3, bytes(ben_moves), lo, 3, n - 1)

    def dfs(level: int, fav: int, count: int, prev_track: int, ann_was_2d: bool) -> None:
        nonlocal nodes
        if level == depth:
            nodes += 1
            return
        choices = (prefix[level],) if level < len(prefix) else _ALL_MOVES
        prologue = level == 0
        for ben in choices:
            ben_track = track[ben]
            word.append(ben)
            ben_moves.append(ben)
            check_append()
            if prologue:
                new_fav = 1 if ben_track == 0 else 0
            else:
                new_fav = table[fav][prev_track][ben_track]
                if new_fav < 0:
                    raise RuntimeError(
                        f"unreachable strategy state: fav={fav} prev={prev_track} move={ben_track}"
                    )
            if new_fav == 2:
                ann = 6
                new_count = count
            else:
                ann = new_fav * 3 + tau_codes[count - 1]
                new_count = count + 1
            word.append(ann)
            check_append()
            if ann == 6 and ann_was_2d:
                raise _ViolationSignal(VIOLATION_DOUBLE_2D, bytes(ben_moves), -1, -1, len(word) - 1)
            if track[ann] == ben_track:
                raise _ViolationSignal(VIOLATION_TRACK_MATCH, bytes(ben_moves), -1, -1, len(word) - 1)
            dfs(level + 1, new_fav, new_count, ben_track, ann == 6)
            word.pop()
            word.pop()
            ben_moves.pop()

    try:
        dfs(0, 0, 2 if ann_starts else 1, -1, False)
    except _ViolationSignal as sig:
        return nodes, sig.data
    return nodes, None

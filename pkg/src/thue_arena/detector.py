"""Square detection: a brute-force oracle and an incremental checker.

``find_square`` is the trusted ground truth: a plain exhaustive scan with
no cleverness.  ``IncrementalChecker`` is the fast path for append-only
words; it compares block fingerprints in two independent hash lanes and
confirms every hit literally, so it can never report a false positive.

Both work on any sequence of comparable symbols (letters, characters,
ints); min_period=2 is the game's notion of a non-trivial square, while
min_period=1 also catches doubled letters.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import PreconditionError
from .words import GameWord, SquareWitness

# Two fingerprint lanes with distinct moduli and bases; a block equality is
# only believed after both lanes agree and a literal comparison confirms it.
_MOD1 = 1_000_000_007
_BASE1 = 911_382_323
_MOD2 = 998_244_353
_BASE2 = 786_433_127


def _symbols(word) -> Sequence:
    return word.letters if isinstance(word, GameWord) else word


def find_square(word, min_period: int = 2) -> Optional[SquareWitness]:
    """Exhaustive scan for a square of period >= min_period.

    Returns the witness with the smallest start, then the smallest period,
    or None if the word is square-free at that threshold.
    """
    if min_period < 1:
        raise ValueError(f"min_period must be >= 1, got {min_period}")
    w = _symbols(word)
    n = len(w)
    for start in range(n):
        max_period = (n - start) // 2
        for p in range(min_period, max_period + 1):
            if w[start] != w[start + p]:
                continue
            k = 1
            while k < p and w[start + k] == w[start + p + k]:
                k += 1
            if k == p:
                return SquareWitness(start, p)
    return None


class IncrementalChecker:
    """Append-only square detector.

    After each append it reports a square ending at the new last position
    (smallest period first) iff one of period >= min_period exists there.
    Candidate periods are screened with the two fingerprint lanes and
    confirmed by direct comparison.
    """

    def __init__(self, min_period: int = 2) -> None:
        if min_period < 1:
            raise ValueError(f"min_period must be >= 1, got {min_period}")
        self.min_period = min_period
        self._symbols: list = []
        self._codes: dict = {}
        self._h1 = [0]
        self._h2 = [0]
        self._pow1 = [1]
        self._pow2 = [1]

    def __len__(self) -> int:
        return len(self._symbols)

    @property
    def word(self) -> tuple:
        return tuple(self._symbols)

    def _code(self, symbol) -> int:
        code = self._codes.get(symbol)
        if code is None:
            code = len(self._codes) + 1
            self._codes[symbol] = code
        return code

    def _hash1(self, lo: int, hi: int) -> int:
        return (self._h1[hi] - self._h1[lo] * self._pow1[hi - lo]) % _MOD1

    def _hash2(self, lo: int, hi: int) -> int:
        return (self._h2[hi] - self._h2[lo] * self._pow2[hi - lo]) % _MOD2

    def append_and_check(self, symbol) -> Optional[SquareWitness]:
        """Append one symbol; return a witness ending at it, if any."""
        code = self._code(symbol)
        self._symbols.append(symbol)
        self._h1.append((self._h1[-1] * _BASE1 + code) % _MOD1)
        self._h2.append((self._h2[-1] * _BASE2 + code) % _MOD2)
        self._pow1.append(self._pow1[-1] * _BASE1 % _MOD1)
        self._pow2.append(self._pow2[-1] * _BASE2 % _MOD2)

        n = len(self._symbols)
        w = self._symbols
        for p in range(self.min_period, n // 2 + 1):
            mid = n - p
            lo = n - 2 * p
            if self._hash1(lo, mid) != self._hash1(mid, n):
                continue
            if self._hash2(lo, mid) != self._hash2(mid, n):
                continue
            if w[lo:mid] == w[mid:n]:
                return SquareWitness(lo, p)
        return None


def append_and_check(checker: IncrementalChecker, symbol) -> Optional[SquareWitness]:
    """Module-level alias for IncrementalChecker.append_and_check."""
    return checker.append_and_check(symbol)


def near_square_threat(word) -> int:
    """Longest p >= 2 such that one more letter would complete a period-p
    square ending at the new position, or 0 if no such p exists."""
    w = _symbols(word)
    n = len(w)
    for p in range((n + 1) // 2, 1, -1):
        lo = n + 1 - 2 * p
        k = 0
        while k < p - 1 and w[lo + k] == w[lo + p + k]:
            k += 1
        if k == p - 1:
            return p
    return 0


def check_insertion_claim(base, positions, new_letter) -> bool:
    """Insert a fresh letter into a square-free word and re-test it.

    ``positions`` are 0-based insertion points into ``base`` (a value of
    len(base) appends at the end).  The base must be square-free and must
    not contain ``new_letter``, and the insertions must not land two new
    letters next to each other.  Returns whether the resulting word is
    free of squares of period >= 2.
    """
    symbols = list(_symbols(base))
    if new_letter in symbols:
        raise PreconditionError(f"base already contains {new_letter!r}")
    if find_square(symbols, min_period=1) is not None:
        raise PreconditionError("base word is not square-free")
    points = sorted(positions)
    if any(not 0 <= p <= len(symbols) for p in points):
        raise PreconditionError("insertion position out of range")

    result: list = []
    idx = 0
    for i, sym in enumerate(symbols):
        while idx < len(points) and points[idx] == i:
            result.append(new_letter)
            idx += 1
        result.append(sym)
    while idx < len(points):
        result.append(new_letter)
        idx += 1

    for i in range(1, len(result)):
        if result[i] == new_letter and result[i - 1] == new_letter:
            raise PreconditionError("insertions created adjacent copies of the new letter")

    return find_square(result, min_period=2) is None

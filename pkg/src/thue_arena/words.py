"""Letters, the seven-letter alphabet, game words and square witnesses.

A letter is a pair (track, color).  Tracks 0 and 1 each carry the colors
a, b, c; track 2 exists only as the single extra letter (2, d).  The full
alphabet is therefore

    (0,a) (0,b) (0,c) (1,a) (1,b) (1,c) (2,d)

and nothing else is constructible.  Letters are interned and encoded as a
small integer code 0..6 in the order above, which the search kernels rely
on for cheap equality and indexing.

Positions are 0-based everywhere in code; user-facing documentation that
counts from 1 says so explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import InvalidLetter, ParseError

_TRACKS = (0, 0, 0, 1, 1, 1, 2)
_COLORS = ("a", "b", "c", "a", "b", "c", "d")
_TOKENS = tuple(f"{t}{c}" for t, c in zip(_TRACKS, _COLORS))


@dataclass(frozen=True, order=True)
class Letter:
    """One of the seven alphabet members, identified by its code 0..6."""

    code: int

    def __post_init__(self) -> None:
        if not isinstance(self.code, int) or not 0 <= self.code <= 6:
            raise InvalidLetter(f"letter code must be in 0..6, got {self.code!r}")

    @property
    def track(self) -> int:
        return _TRACKS[self.code]

    @property
    def color(self) -> str:
        return _COLORS[self.code]

    @property
    def token(self) -> str:
        return _TOKENS[self.code]

    def __str__(self) -> str:
        return self.token

    def __repr__(self) -> str:
        return f"Letter({self.token!r})"


#: All seven letters in enumeration order (0,a) (0,b) (0,c) (1,a) (1,b) (1,c) (2,d).
ALPHABET: tuple[Letter, ...] = tuple(Letter(code) for code in range(7))

LETTER_2D = ALPHABET[6]


def make_letter(track: int, color: str) -> Letter:
    """Build the letter (track, color), rejecting the 5 invalid pairs."""
    if track in (0, 1) and color in ("a", "b", "c"):
        return ALPHABET[track * 3 + "abc".index(color)]
    if track == 2 and color == "d":
        return LETTER_2D
    raise InvalidLetter(f"({track!r}, {color!r}) is not in the seven-letter alphabet")


def parse_letter(token: str) -> Letter:
    """Parse a two-character token such as "0a" or "2d"."""
    try:
        return ALPHABET[_TOKENS.index(token)]
    except (ValueError, TypeError):
        raise ParseError(f"not a letter token: {token!r}") from None


def format_letter(letter: Letter) -> str:
    """Inverse of parse_letter: the two-character token of a letter."""
    return letter.token


def delete_letter(word, target):
    """All elements of ``word`` different from ``target``, order preserved.

    Works on a GameWord, a sequence of letters, or any sequence of
    comparable symbols (e.g. a color string).  Always returns a tuple.
    """
    if isinstance(word, GameWord):
        word = word.letters
    return tuple(item for item in word if item != target)


class Mode(Enum):
    """Who appends the first letter of the word."""

    ANN_STARTS = "ann-starts"
    BEN_STARTS = "ben-starts"

    @classmethod
    def parse(cls, text: str) -> "Mode":
        for mode in cls:
            if mode.value == text:
                return mode
        raise ParseError(f"not a mode: {text!r} (expected ann-starts or ben-starts)")

    @property
    def token(self) -> str:
        return self.value


@dataclass(frozen=True)
class GameWord:
    """A jointly built word with positional player attribution.

    With ANN_STARTS the positions 0, 2, 4, ... belong to Ann; with
    BEN_STARTS they belong to Ben.
    """

    letters: tuple[Letter, ...]
    starter: Mode

    def player_at(self, index: int) -> str:
        """'A' or 'B' for the 0-based position ``index``."""
        if not 0 <= index < len(self.letters):
            raise IndexError(index)
        even = index % 2 == 0
        if self.starter is Mode.ANN_STARTS:
            return "A" if even else "B"
        return "B" if even else "A"

    def tokens(self) -> list[str]:
        return [letter.token for letter in self.letters]

    @classmethod
    def parse(cls, text: str, starter: Mode) -> "GameWord":
        """Parse whitespace-separated letter tokens."""
        return cls(tuple(parse_letter(tok) for tok in text.split()), starter)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, index):
        return self.letters[index]


@dataclass(frozen=True)
class SquareWitness:
    """Locates a square: letters[start : start+period] repeated immediately."""

    start: int
    period: int

    def __post_init__(self) -> None:
        if self.start < 0 or self.period < 1:
            raise ValueError(f"bad witness ({self.start}, {self.period})")

    @property
    def end(self) -> int:
        """0-based index one past the square."""
        return self.start + 2 * self.period

    def holds_in(self, word: Sequence) -> bool:
        """Check the witness against a word (GameWord or plain sequence)."""
        letters = word.letters if isinstance(word, GameWord) else word
        if self.end > len(letters):
            return False
        s, p = self.start, self.period
        return all(letters[s + k] == letters[s + p + k] for k in range(p))


def letters_from_tokens(tokens: Iterable[str]) -> tuple[Letter, ...]:
    return tuple(parse_letter(tok) for tok in tokens)

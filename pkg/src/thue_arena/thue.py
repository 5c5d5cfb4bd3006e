"""Square-free schedule for Ann's colors: the ternary Thue word.

The word tau over {a, b, c} is the fixed point of the morphism

    a -> abc    b -> ac    c -> b

starting from "a".  It is square-free, begins a b c a c b ..., and
supplies the second components of Ann's moves in order.  Indexing is
1-based: tau[1] = a.

As an independent cross-check, the same word is also derived from the
binary Thue-Morse sequence (parity of 1-bits) by counting the 1s between
consecutive 0s and mapping the counts 2 -> a, 1 -> b, 0 -> c.
"""

from __future__ import annotations

import threading

_MORPHISM = {"a": "abc", "b": "ac", "c": "b"}

#: Color letters in code order; code 3 ("d") is never produced by tau.
COLOR_CODES = {"a": 0, "b": 1, "c": 2, "d": 3}


class TauStream:
    """Growable cache of the ternary Thue word.

    The buffer is extended by applying the morphism to the whole current
    buffer, which always yields an extension of it, so already-materialized
    prefixes never change.  Extension is serialized with a lock; reads of
    materialized prefixes are safe from any thread.
    """

    def __init__(self) -> None:
        self._buffer = "a"
        self._lock = threading.Lock()

    def _ensure(self, n: int) -> None:
        if len(self._buffer) >= n:
            return
        with self._lock:
            while len(self._buffer) < n:
                self._buffer = "".join(_MORPHISM[ch] for ch in self._buffer)

    def at(self, index: int) -> str:
        """The color at 1-based position ``index``."""
        if not isinstance(index, int) or index < 1:
            raise IndexError(f"tau index must be >= 1, got {index!r}")
        self._ensure(index)
        return self._buffer[index - 1]

    def prefix(self, n: int) -> str:
        """The first ``n`` colors as a string."""
        if n < 0:
            raise ValueError(f"prefix length must be >= 0, got {n}")
        self._ensure(n)
        return self._buffer[:n]


_SHARED = TauStream()


def tau_at(index: int) -> str:
    return _SHARED.at(index)


def tau_prefix(n: int) -> str:
    return _SHARED.prefix(n)


def tau_codes_prefix(n: int) -> bytes:
    """First ``n`` colors as color codes 0/1/2, for the search kernels."""
    return bytes(COLOR_CODES[ch] for ch in tau_prefix(n))


def thue_morse_bit(n: int) -> int:
    """Parity of the number of 1-bits in the binary expansion of ``n``."""
    if n < 0:
        raise ValueError(f"thue_morse_bit expects n >= 0, got {n}")
    return bin(n).count("1") & 1


_GAP_TO_COLOR = {2: "a", 1: "b", 0: "c"}


def tau_via_thue_morse_prefix(n: int) -> str:
    """First ``n`` colors derived from the Thue-Morse sequence.

    Walks the Thue-Morse bits, and for each pair of consecutive 0s emits
    the color coding the number of 1s between them.  Independent of the
    morphism construction; the two must agree everywhere.
    """
    if n < 0:
        raise ValueError(f"prefix length must be >= 0, got {n}")
    out: list[str] = []
    ones = 0
    m = 1  # thue_morse_bit(0) == 0 opens the first gap
    while len(out) < n:
        if thue_morse_bit(m):
            ones += 1
        else:
            out.append(_GAP_TO_COLOR[ones])
            ones = 0
        m += 1
    return "".join(out)


def tau_via_thue_morse(n: int) -> str:
    """The color at 1-based position ``n``, by the Thue-Morse derivation."""
    if n < 1:
        raise IndexError(f"tau index must be >= 1, got {n}")
    return tau_via_thue_morse_prefix(n)[-1]

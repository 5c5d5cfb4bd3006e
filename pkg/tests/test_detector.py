"""Square detection: brute oracle, incremental checker, threats, insertions."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from thue_arena.detector import (
    IncrementalChecker,
    append_and_check,
    check_insertion_claim,
    find_square,
    near_square_threat,
)
from thue_arena.errors import PreconditionError
from thue_arena.thue import tau_prefix
from thue_arena.words import SquareWitness


def test_find_square_basic_hits():
    assert find_square("abab") == SquareWitness(0, 2)
    assert find_square("abcabc") == SquareWitness(0, 3)
    assert find_square("xabab") == SquareWitness(1, 2)
    assert find_square("aa", min_period=1) == SquareWitness(0, 1)


def test_find_square_misses():
    assert find_square("") is None
    assert find_square("a") is None
    assert find_square("abc") is None
    assert find_square("abcacb") is None
    assert find_square("aa") is None  # period 1 ignored by default


def test_find_square_min_period_filters():
    assert find_square("aabb", min_period=1) == SquareWitness(0, 1)
    assert find_square("aabb", min_period=2) is None
    assert find_square("abcbabcb", min_period=2) == SquareWitness(0, 4)
    assert find_square("abcbabcb", min_period=4) == SquareWitness(0, 4)
    assert find_square("abcbabcb", min_period=5) is None


def test_find_square_prefers_earliest_start_then_smallest_period():
    # Squares at (1,2) "abab" and (4,1) "cc": start-major order wins.
    assert find_square("xababcc", min_period=1) == SquareWitness(1, 2)
    # Same start, two periods: "aaaa" has (0,1) and (0,2).
    assert find_square("aaaa", min_period=1) == SquareWitness(0, 1)


def test_find_square_works_on_letter_sequences():
    from thue_arena.words import letters_from_tokens

    word = letters_from_tokens(["0a", "2d", "0b", "1a", "0c",
                                "0a", "2d", "0b", "1a", "0c"])
    assert find_square(word) == SquareWitness(0, 5)


def test_incremental_matches_manual_feeds():
    checker = IncrementalChecker()
    hits = [checker.append_and_check(ch) for ch in "abcabc"]
    assert hits[:-1] == [None] * 5
    assert hits[-1] == SquareWitness(0, 3)


def test_incremental_reports_smallest_period_ending_at_cursor():
    checker = IncrementalChecker(min_period=1)
    out = None
    for ch in "abaa":
        out = checker.append_and_check(ch)
    assert out == SquareWitness(2, 1)


def test_incremental_module_level_helper():
    checker = IncrementalChecker()
    assert append_and_check(checker, "a") is None
    assert append_and_check(checker, "a") is None  # period 1 not tracked
    assert append_and_check(checker, "b") is None


def test_incremental_keeps_reporting_after_a_detection():
    checker = IncrementalChecker()
    for ch in "abab":
        last = checker.append_and_check(ch)
    assert last == SquareWitness(0, 2)
    # Appends stay legal; each further report covers squares ending there.
    assert checker.append_and_check("x") is None
    assert checker.append_and_check("x") is None  # period 1 below threshold
    assert checker.append_and_check("a") is None
    assert checker.append_and_check("x") is None
    assert checker.append_and_check("a") == SquareWitness(5, 2)


def _first_detection(word, min_period):
    """(index of first incremental hit or None, witness)."""
    checker = IncrementalChecker(min_period=min_period)
    for i, ch in enumerate(word):
        witness = checker.append_and_check(ch)
        if witness is not None:
            return i, witness
    return None, None


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="abc", max_size=60), st.integers(min_value=1, max_value=3))
def test_incremental_equals_oracle_on_random_words(word, min_period):
    index, witness = _first_detection(word, min_period)
    if index is None:
        assert find_square(word, min_period) is None
    else:
        prefix = word[: index + 1]
        assert find_square(prefix[:-1], min_period) is None
        assert witness.holds_in(prefix)
        assert witness.end == len(prefix)
        oracle = find_square(prefix, min_period)
        assert oracle is not None
        assert oracle.holds_in(prefix)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=6), max_size=80),
       st.integers(min_value=1, max_value=3))
def test_incremental_equals_oracle_on_seven_symbol_words(word, min_period):
    index, witness = _first_detection(word, min_period)
    if index is None:
        assert find_square(word, min_period) is None
    else:
        prefix = word[: index + 1]
        assert find_square(prefix[:-1], min_period) is None
        assert witness.holds_in(prefix)


def test_near_square_threat_examples():
    assert near_square_threat("") == 0
    assert near_square_threat("ab") == 0
    assert near_square_threat("abcab") == 3  # one 'c' short of (abc)(abc)
    assert near_square_threat("abab") == 2  # one 'a' short of (ba)(ba)
    assert near_square_threat("ababa") == 2
    assert near_square_threat("abcdab") == 0


def test_near_square_threat_reports_longest_period():
    # One short of period 4 (abcd abc_) and of period 2 nowhere else.
    assert near_square_threat("abcdabc") == 4


def test_insertion_claim_basic():
    assert check_insertion_claim("abcacb", [0, 3, 6], "d") is True
    assert check_insertion_claim("abcacb", [], "d") is True


def test_insertion_claim_rejects_used_letter():
    with pytest.raises(PreconditionError):
        check_insertion_claim("abcacb", [2], "a")


def test_insertion_claim_rejects_square_base():
    with pytest.raises(PreconditionError):
        check_insertion_claim("abab", [1], "d")


def test_insertion_claim_rejects_adjacent_copies():
    with pytest.raises(PreconditionError):
        check_insertion_claim("abc", [1, 1], "d")


def test_insertion_claim_rejects_out_of_range_positions():
    with pytest.raises(PreconditionError):
        check_insertion_claim("abc", [4], "d")
    with pytest.raises(PreconditionError):
        check_insertion_claim("abc", [-1], "d")


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_insertion_claim_holds_on_thue_windows(data):
    # Square-free base: a window of the ternary word; insert 'd' copies at
    # random non-adjacent positions; the result must stay square-free for
    # periods >= 2.
    start = data.draw(st.integers(min_value=0, max_value=400))
    length = data.draw(st.integers(min_value=0, max_value=40))
    base = tau_prefix(start + length)[start:]
    spots = sorted(set(data.draw(
        st.lists(st.integers(min_value=0, max_value=len(base)), max_size=6))))
    assert check_insertion_claim(base, spots, "d") is True


def test_insertion_claim_period_one_squares_are_expected():
    # Inserting between equal neighbours leaves the unary repeat argument
    # to min_period >= 2; the claim is still about longer squares.
    base = "aba"
    result_ok = check_insertion_claim(base, [1], "d")
    assert result_ok is True


@pytest.mark.parametrize("word", ["abdcabdc", "adbaadba", "xdabcdabcy", "dada"])
def test_deleting_the_interleaved_letter_preserves_a_square(word):
    # Converse direction of the insertion property: a square whose halves
    # interleave isolated 'd's is still a square once the 'd's are removed.
    from thue_arena.words import delete_letter

    assert find_square(word, min_period=2) is not None
    assert find_square(delete_letter(word, "d"), min_period=1) is not None


def test_oracle_smoke_on_long_thue_prefix():
    word = tau_prefix(800)
    assert find_square(word, min_period=1) is None
    checker = IncrementalChecker(min_period=1)
    for ch in word:
        assert checker.append_and_check(ch) is None


def test_randomized_cross_check_fixed_seed():
    rng = random.Random(20240817)
    for _ in range(200):
        n = rng.randrange(0, 120)
        word = "".join(rng.choice("abcdefg") for _ in range(n))
        min_period = rng.choice([1, 2, 3])
        index, witness = _first_detection(word, min_period)
        if index is None:
            assert find_square(word, min_period) is None
        else:
            prefix = word[: index + 1]
            assert find_square(prefix[:-1], min_period) is None
            assert witness.holds_in(prefix)

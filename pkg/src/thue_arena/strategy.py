"""Ann's favourite-letter strategy as an explicit state machine.

Ann keeps a favourite track and emits one letter per turn.  The color of
every emitted letter follows the ternary Thue word, consumed in order and
paused whenever the emitted letter is (2,d).  The track evolves by three
rules, applied after seeing Ben's move:

* switch-from-2: if the favourite track is 2, Ann never keeps it; the new
  track is 1 against Ben's track 0, 0 against track 1, and the opposite of
  Ben's previous track when Ben just played (2,d).
* forced-change: if Ben's move matches the favourite, the new track is
  3 - ben_prev.track - ben_move.track (track 2 means the letter (2,d)).
* keep: otherwise the track is unchanged.

By default "matches" compares tracks only.  With strict_pair_match the
whole (track, color) pair must be equal; that reading can drive the
forced-change formula out of the track range, in which case respond
raises StateError rather than leaving the alphabet.

Before the loop there is a short scripted prologue: with ANN_STARTS Ann
opens with (0,a) and answers Ben's first move with color b; with
BEN_STARTS her first answer uses the first Thue color.  In both cases the
prologue track is 1 if Ben played track 0, else 0.

States are immutable; respond is a pure function, so independent games
can share nothing and run in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .errors import StateError
from .thue import tau_at
from .words import LETTER_2D, Letter, Mode, make_letter

RULE_PROLOGUE = "prologue"
RULE_SWITCH_FROM_2 = "switch-from-2"
RULE_FORCED_CHANGE = "forced-change"
RULE_KEEP = "keep"


class Phase(Enum):
    INITIAL = "initial"
    AWAITING_BEN = "awaiting-ben"


@dataclass(frozen=True)
class AnnState:
    """Ann's full decision state between turns.

    count is the 1-based index of the next Thue color to consume; it
    advances exactly when the emitted letter is not (2,d).  ben_prev is
    Ben's latest move already folded into the state.
    """

    mode: Mode
    phase: Phase
    favourite_track: int
    favourite_color: str
    count: int
    ben_prev: Optional[Letter]
    strict_pair_match: bool = False

    @property
    def favourite(self) -> Letter:
        return make_letter(self.favourite_track, self.favourite_color)


def initial_state(mode: Mode, strict_pair_match: bool = False) -> tuple[Optional[Letter], AnnState]:
    """Set up a game.  Returns (Ann's opening letter or None, state).

    With ANN_STARTS the opening letter (0,a) is returned and the state is
    positioned so Ann's second letter uses color b and her third the third
    Thue color.  With BEN_STARTS no letter is emitted and Ann's first
    answer will use the first Thue color.
    """
    if mode is Mode.ANN_STARTS:
        opening: Optional[Letter] = make_letter(0, "a")
        count = 2
    elif mode is Mode.BEN_STARTS:
        opening = None
        count = 1
    else:
        raise StateError(f"not a mode: {mode!r}")
    state = AnnState(
        mode=mode,
        phase=Phase.INITIAL,
        favourite_track=0,
        favourite_color="a",
        count=count,
        ben_prev=None,
        strict_pair_match=strict_pair_match,
    )
    return opening, state


def transition_rule(state: AnnState, ben_move: Letter) -> str:
    """Which rule respond() will apply for this (state, move) pair."""
    _check_inputs(state, ben_move)
    if state.phase is Phase.INITIAL:
        return RULE_PROLOGUE
    if state.favourite_track == 2:
        return RULE_SWITCH_FROM_2
    if _matches(state, ben_move):
        return RULE_FORCED_CHANGE
    return RULE_KEEP


def respond(state: AnnState, ben_move: Letter) -> tuple[Letter, AnnState]:
    """Fold in Ben's move and emit Ann's reply.  Pure and deterministic."""
    rule = transition_rule(state, ben_move)

    if rule == RULE_PROLOGUE:
        track = 1 if ben_move.track == 0 else 0
        letter = make_letter(track, tau_at(state.count))
        new_state = replace(
            state,
            phase=Phase.AWAITING_BEN,
            favourite_track=track,
            favourite_color=letter.color,
            count=state.count + 1,
            ben_prev=ben_move,
        )
        return letter, new_state

    if rule == RULE_SWITCH_FROM_2:
        if ben_move.track == 0:
            track = 1
        elif ben_move.track == 1:
            track = 0
        else:
            prev = state.ben_prev
            if prev is None or prev.track not in (0, 1):
                raise StateError(
                    "favourite track 2 must follow a Ben move on track 0 or 1, "
                    f"found ben_prev={prev!r}"
                )
            track = 1 - prev.track
    elif rule == RULE_FORCED_CHANGE:
        track = 3 - state.ben_prev.track - ben_move.track
        if track not in (0, 1, 2):
            raise StateError(
                f"forced change left the track range: 3 - {state.ben_prev.track} - "
                f"{ben_move.track} = {track} (strict pair matching allows Ben to "
                "force this; the track-matching strategy cannot reach it)"
            )
    else:  # RULE_KEEP
        track = state.favourite_track

    if track == 2:
        letter = LETTER_2D
        count = state.count
    else:
        letter = make_letter(track, tau_at(state.count))
        count = state.count + 1
    new_state = replace(
        state,
        favourite_track=track,
        favourite_color=letter.color,
        count=count,
        ben_prev=ben_move,
    )
    return letter, new_state


def _matches(state: AnnState, ben_move: Letter) -> bool:
    if ben_move.track != state.favourite_track:
        return False
    if state.strict_pair_match:
        return ben_move.color == state.favourite_color
    return True


def _check_inputs(state: AnnState, ben_move: Letter) -> None:
    if not isinstance(state, AnnState):
        raise StateError("respond() needs the state returned by initial_state()")
    if not isinstance(ben_move, Letter):
        raise StateError(f"ben_move must be a Letter, got {ben_move!r}")
    if state.phase is Phase.INITIAL:
        if state.ben_prev is not None:
            raise StateError("initial state must not carry a previous Ben move")
    elif state.ben_prev is None:
        raise StateError("loop state must carry Ben's previous move")
    if state.count < 1:
        raise StateError(f"Thue counter must be >= 1, got {state.count}")
    if state.favourite_track not in (0, 1, 2):
        raise StateError(f"favourite track out of range: {state.favourite_track}")

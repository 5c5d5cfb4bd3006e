"""Playable, verifiable strategy for the non-repetitive game on 7 letters.

Two players alternately append letters to a shared word: Ann tries to
keep it free of non-trivial squares (a block of length >= 2 repeated
immediately), Ben tries to create one.  This package implements Ann's
deterministic favourite-letter strategy over the seven-letter alphabet
(0,a) (0,b) (0,c) (1,a) (1,b) (1,c) (2,d), verifies it by bounded
exhaustive search over all Ben move sequences, and exposes the game
through a CLI and a small HTTP session service.
"""

from .arena import (
    BenAdversary,
    GameRecord,
    GreedyBen,
    MirrorBen,
    RandomBen,
    ScriptedBen,
    VerificationReport,
    active_kernel_name,
    exhaustive_verify,
    make_adversary,
    play_game,
    replay,
)
from .detector import IncrementalChecker, check_insertion_claim, find_square, near_square_threat
from .errors import (
    DepthError,
    DivergenceError,
    InvalidLetter,
    ParseError,
    PreconditionError,
    StateError,
    ThueArenaError,
)
from .strategy import AnnState, initial_state, respond
from .thue import tau_at, tau_prefix, tau_via_thue_morse, thue_morse_bit
from .words import (
    ALPHABET,
    GameWord,
    Letter,
    Mode,
    SquareWitness,
    delete_letter,
    format_letter,
    make_letter,
    parse_letter,
)

__version__ = "1.0.0"

__all__ = [
    "ALPHABET",
    "AnnState",
    "BenAdversary",
    "DepthError",
    "DivergenceError",
    "GameRecord",
    "GameWord",
    "GreedyBen",
    "IncrementalChecker",
    "InvalidLetter",
    "Letter",
    "MirrorBen",
    "Mode",
    "ParseError",
    "PreconditionError",
    "RandomBen",
    "ScriptedBen",
    "SquareWitness",
    "StateError",
    "ThueArenaError",
    "VerificationReport",
    "active_kernel_name",
    "check_insertion_claim",
    "delete_letter",
    "exhaustive_verify",
    "find_square",
    "format_letter",
    "initial_state",
    "make_adversary",
    "make_letter",
    "near_square_threat",
    "parse_letter",
    "play_game",
    "replay",
    "respond",
    "tau_at",
    "tau_prefix",
    "tau_via_thue_morse",
    "thue_morse_bit",
]

"""Exception types shared across the package."""


class ThueArenaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidLetter(ThueArenaError):
    """A (track, color) pair outside the seven-letter alphabet."""


class ParseError(ThueArenaError):
    """A token or trace line that does not match the expected format."""


class StateError(ThueArenaError):
    """The strategy was driven out of turn or reached an impossible state."""


class PreconditionError(ThueArenaError):
    """An operation was called with inputs that violate its contract."""


class DepthError(ThueArenaError):
    """A search was requested that exceeds the configured resource limits."""


class DivergenceError(ThueArenaError):
    """A replayed trace disagrees with the strategy's recomputed moves."""

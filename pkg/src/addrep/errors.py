"""Exception types shared across the toolkit.

Every error raised on purpose by this package derives from ToolkitError, so
callers (and the CLI) can tell domain failures apart from genuine bugs.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class HorizonExceeded(ToolkitError):
    """A query point lies beyond the certified horizon of a sequence."""


class RangeTooLarge(ToolkitError):
    """A dense computation would exceed its configured budget."""


class AlignmentIncomplete(ToolkitError):
    """An index-aligned comparison needs an element that is not stored."""


class HypothesisViolated(ToolkitError):
    """A block plan breaks a <= (4d+1)b or b <= (4d+1)a at some index."""

    def __init__(self, n: int, message: str = ""):
        self.n = n
        super().__init__(message or f"plan hypothesis fails at index {n}")


class NotMonotone(ToolkitError):
    """A control sequence decreases at some index."""

    def __init__(self, n: int, message: str = ""):
        self.n = n
        super().__init__(message or f"control sequence decreases at index {n}")


class BlockOverlap(ToolkitError):
    """Two assembled blocks interleave; the scale separation failed."""


class Exhausted(ToolkitError):
    """A greedy candidate scan ran out of values."""


class NonpositiveBracket(ToolkitError):
    """A recursion bracket that must stay positive did not."""


class IdentityBroken(ToolkitError):
    """An algebraic identity the construction guarantees failed to hold."""

    def __init__(self, i: int, message: str = ""):
        self.i = i
        super().__init__(message or f"identity fails at step {i}")


class DuplicatePair(ToolkitError):
    """Two representations that must be distinct coincide."""

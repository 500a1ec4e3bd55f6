"""Exception types shared across the engine."""


class SemcloudError(Exception):
    """Base class for engine errors."""


class EmptyInput(SemcloudError):
    """Input text contains no usable tokens."""


class UnknownTerm(SemcloudError):
    """A referenced term id does not exist in the graph/layout."""


class UnknownState(SemcloudError):
    """A named saved state does not exist in the session."""


class EmptyHistory(SemcloudError):
    """Undo requested on a session with no history."""


class NonConvergence(SemcloudError):
    """Overlap resolution failed to settle within the pass budget."""

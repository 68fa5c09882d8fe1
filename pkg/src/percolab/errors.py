"""Exception hierarchy shared by all percolab modules."""


class PercolabError(Exception):
    """Base class; CLI maps these to exit code 2."""


class ParseError(PercolabError):
    """Malformed edge-list input."""


class InvalidGraph(PercolabError):
    """Structurally invalid graph (loop, duplicate edge, out-of-range vertex)."""


class Disconnected(InvalidGraph):
    """A base graph must be connected."""


class OutOfRange(PercolabError):
    """Vertex code or digit tuple outside the valid range."""


class TargetOutOfRange(PercolabError):
    """No root in (0, 1) for the requested target value."""


class NonConvergence(PercolabError):
    """Root finder hit its iteration cap; indicates a solver bug."""


class TooManyEdges(PercolabError):
    """Exact subset enumeration is capped at 26 edges."""


class BudgetExceeded(PercolabError):
    """Subset search ran out of budget; carries the best upper bound found."""

    def __init__(self, message, best_upper_bound=None):
        super().__init__(message)
        self.best_upper_bound = best_upper_bound


class InvalidSet(PercolabError):
    """Vertex set violates an operation precondition."""


class ComponentTooSmall(PercolabError):
    """A component has fewer than ell + 1 vertices."""


class AttemptsCapReached(PercolabError):
    """Randomized construction failed repeatedly; indicates a bug, not bad luck."""


class EmptySample(PercolabError):
    """Statistics requested over an empty sample."""

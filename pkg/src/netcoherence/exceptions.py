"""Exception hierarchy shared across the package."""


class CoherenceError(Exception):
    """Base class for all errors raised by netcoherence."""


class InvalidGraphError(CoherenceError, ValueError):
    """A graph, composite specification or profile violates its invariants."""


class InvalidEdgeError(InvalidGraphError):
    """Self-loop or out-of-range endpoint."""


class DisconnectedGraphError(CoherenceError):
    """Consensus coherence is undefined on a disconnected graph."""

    def __init__(self, message="coherence undefined: graph disconnected", n_components=None):
        super().__init__(message)
        self.n_components = n_components


class NotPositiveDefiniteError(CoherenceError):
    """``L + diag(d)`` is singular; some component has no stubborn node."""

    def __init__(self, message, components=()):
        super().__init__(message)
        self.components = tuple(tuple(c) for c in components)


class GenerationError(CoherenceError):
    """Random instance generation ran out of retries."""


class BudgetExceededError(CoherenceError):
    """Exhaustive enumeration would exceed the configured budget."""


class UnstableStepError(CoherenceError):
    """Euler-Maruyama step size violates the stability bound."""


class FormatError(InvalidGraphError):
    """Malformed input file; message carries file and line context."""

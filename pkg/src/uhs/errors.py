"""Exception types shared across the package."""


class HypergraphFormatError(ValueError):
    """Malformed .uhg text or invalid hypergraph data."""


class PreconditionError(ValueError):
    """An operation was called outside its domain of validity."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach the requested tolerance."""

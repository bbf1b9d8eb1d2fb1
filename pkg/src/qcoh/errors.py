class PreconditionError(ValueError):
    """An input violates a documented precondition (bad genus, degree imbalance, ...)."""


class VerificationError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""

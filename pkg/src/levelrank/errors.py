"""Exception types shared across modules.

``DomainError`` marks a violated precondition (bad input); the command
line maps it to exit code 2.  ``VerificationError`` marks an identity
that was expected to hold and did not; it maps to exit code 3.
"""


class DomainError(ValueError):
    pass


class VerificationError(AssertionError):
    pass


class DegenerateParameters(DomainError):
    """Chosen specialization of parameters is not generic enough."""

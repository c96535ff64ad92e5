"""Exception hierarchy shared by every module."""


class SrmError(Exception):
    """Base class for errors raised by this package."""


class DomainError(SrmError, ValueError):
    """An input violates an operation's mathematical precondition."""


class CapExceeded(DomainError):
    """An exhaustive search was requested beyond the configured cell cap."""


class HypothesisError(DomainError):
    """A theorem-level hypothesis does not hold, so the theorem does not apply."""

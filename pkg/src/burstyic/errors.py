"""Exception types shared across the package."""


class BurstyICError(Exception):
    """Base class for all package errors."""


class ParameterError(BurstyICError, ValueError):
    """An argument has the wrong shape, range or type."""


class DomainError(BurstyICError, ValueError):
    """A formula was asked for outside the region where it is defined."""


class ConfigurationError(BurstyICError, ValueError):
    """A scheme or command cannot run with the given channel configuration."""


class InvariantViolation(BurstyICError):
    """An internal consistency check failed; this indicates a bug."""

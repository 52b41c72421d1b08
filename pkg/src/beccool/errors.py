"""Error taxonomy shared by the library, the HTTP service and the CLI."""


class BeccoolError(Exception):
    """Base class for all package errors."""

    kind = "internal"


class ConfigError(BeccoolError):
    """Malformed, unknown or conflicting configuration input."""

    kind = "config"


class DomainError(BeccoolError):
    """Physically meaningless argument (wrong sign, out of range, ...)."""

    kind = "domain"


class OracleError(BeccoolError):
    """Numerical solver failure: truncation too small, unstable step, singular system."""

    kind = "oracle"

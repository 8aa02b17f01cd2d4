"""Exception hierarchy shared by all modules."""


class CoverwalkError(Exception):
    """Base class for library errors."""


class ValidationError(CoverwalkError):
    """Malformed or inconsistent input data."""


class CapacityError(CoverwalkError):
    """Input exceeds a configured computational bound."""


class InfeasibleError(ValidationError):
    """No object with the requested discrete invariants exists."""


class PadeError(ValidationError):
    """Rational reconstruction failed at the requested degrees."""

"""Semantic exception hierarchy shared across the package."""


class EstimationError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(EstimationError):
    """Bad user-supplied configuration: missing columns, conflicting options."""


class ParseError(EstimationError):
    """Malformed input data, e.g. a non-numeric cell."""


class DesignError(EstimationError):
    """Design constraints violated, e.g. the population size is not n * k."""


class DomainError(EstimationError):
    """Inputs outside the mathematical domain of an operation."""


class DegenerateInputError(DomainError):
    """Inputs that leave a quantity undefined: zero spread, zero mean."""


class SingularityError(EstimationError):
    """An estimator hit a zero denominator for this sample."""

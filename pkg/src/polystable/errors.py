"""Exception types shared across the package."""


class PolystableError(Exception):
    """Base class for all package errors."""


class DescriptorError(PolystableError, ValueError):
    """Malformed combinatorial data (shapes, morphism tables, charts)."""


class CompositionError(PolystableError, ValueError):
    """Two morphisms whose endpoints do not match were composed."""


class DomainError(PolystableError, ValueError):
    """An operation was applied outside of its domain of definition."""


class ValidationError(PolystableError):
    """A descriptor or descent datum failed validation.

    ``violations`` is a list of ``(condition, message)`` pairs.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{code}: {msg}" for code, msg in self.violations)
        super().__init__(text or "validation failed")

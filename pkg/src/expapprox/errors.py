"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A model parameter violates its invariants."""


class PreconditionError(ValueError):
    """An operation was called outside its stated range of validity."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured enumeration budget."""


class ToleranceError(RuntimeError):
    """A requested certified tolerance is unreachable within the iteration cap."""

"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """An operation was called outside its documented domain of arguments."""


class DomainError(ValueError):
    """A point lies where the requested map is undefined (zero vector, indeterminacy)."""


class InternalConsistencyError(AssertionError):
    """A structural identity that must always hold was violated."""


class SamplingError(RuntimeError):
    """A random sampler could not produce an element with the requested property."""

"""Exception types shared across the toolkit."""


class InvalidInput(ValueError):
    """Input violates a structural invariant (closure, cover property, shape...)."""


class Unsupported(ValueError):
    """Input is well formed but outside what is computed exactly."""

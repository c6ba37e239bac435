"""Shared exception types."""


class ConvergenceError(RuntimeError):
    """A numerical scheme failed to converge within its resource cap."""

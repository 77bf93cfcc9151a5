"""Exception types shared by the library and the CLI."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class ReconstructionError(ArithmeticError):
    """No rational function of the requested degrees fits the samples.

    ``residual`` holds the first sample the candidate failed on, when there
    is a candidate at all.
    """

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class UnboundedAtInfinityError(ArithmeticError):
    pass


class ResourceLimitError(RuntimeError):
    """The requested enumeration exceeds the configured cap."""

"""Exception hierarchy.

DomainError subclasses ValueError so callers that only know the standard
library still catch bad arguments; ConvergenceError subclasses RuntimeError.
"""

from __future__ import annotations


class PQTrigError(Exception):
    """Base class for every error raised by pqtrig."""


class DomainError(PQTrigError, ValueError):
    """An argument or parameter lies outside the admissible domain."""


class FormulaDomainError(DomainError):
    """A closed-form formula's own validity predicate fails (e.g. a non-positive radicand)."""


class NearDegenerateError(FormulaDomainError):
    """An addition formula's denominator vanishes to working precision (u close to v)."""


class ConvergenceError(PQTrigError, RuntimeError):
    """The inversion hit its iteration cap with the residual above tolerance.

    Carries the best value found and its residual so callers can decide.
    """

    def __init__(self, message: str, best_value: float, residual: float):
        super().__init__(message)
        self.best_value = best_value
        self.residual = residual

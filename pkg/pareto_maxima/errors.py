# pareto_maxima/errors.py
from __future__ import annotations

from typing import Optional


class ParetoError(Exception):
    """Base for every error raised by this package."""


class DomainError(ParetoError, ValueError):
    """Argument outside the domain of an operation (or an invalid law)."""


class ConfigError(ParetoError, ValueError):
    """Bad CLI flags or sweep configuration; detected before any computation."""


class ResourceLimitError(ParetoError, RuntimeError):
    """A configured size cap would be exceeded."""


class CensoringError(ResourceLimitError):
    """Prefix width kept getting censored up to the width cap."""


class ConvergenceError(ParetoError, RuntimeError):
    def __init__(self, message: str, best_estimate: Optional[float] = None) -> None:
        super().__init__(message)
        self.best_estimate = best_estimate


class OutputError(ParetoError, OSError):
    """CSV could not be written; message carries the path."""


__all__ = [
    "ParetoError",
    "DomainError",
    "ConfigError",
    "ResourceLimitError",
    "CensoringError",
    "ConvergenceError",
    "OutputError",
]

from __future__ import annotations


class QmeError(RuntimeError):
    """Base class for every error raised by the engine simulator."""


class ConfigError(QmeError):
    """Raised when an experiment configuration or CLI value is invalid."""


class DimensionMismatchError(QmeError, ValueError):
    """Raised when operand shapes or subsystem factorizations disagree."""


class InvalidStateError(QmeError, ValueError):
    """Raised when a quantum object violates its construction invariants."""


class NotDiagonalError(QmeError):
    """Raised when an entropy needs a diagonal basis the state does not carry."""


class ExactPathCapError(QmeError):
    """Raised when the full-state path is requested above the subsystem cap."""


class AnalyticPathUnavailableError(QmeError):
    """Raised when a strategy has no closed-form evaluation."""


class NotAnEngineError(QmeError):
    """Raised when an efficiency is requested for a cycle with ΔE <= 0."""


class InvariantViolationError(QmeError):
    """Raised when an identity that must hold numerically is violated."""

"""Exception hierarchy for the elgr engine.

Domain failures (a target that is not entailed, a strategy that proposes an
invalid replacement, an exhausted search budget) are raised as distinct
subclasses of :class:`ElgrError` so that the CLI and the HTTP service can map
them to exit codes and status codes without string matching.
"""

from __future__ import annotations

__all__ = [
    "ElgrError",
    "ElParseError",
    "NotEntailedError",
    "StaticEntailsError",
    "PreconditionError",
    "StrategyViolationError",
    "ScriptExhaustedError",
    "SearchBudgetExceededError",
    "EngineInvariantError",
]


class ElgrError(Exception):
    """Base class for all engine errors."""


class ElParseError(ElgrError):
    """Syntax error in concept, axiom, or ontology text."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.raw_message = message
        self.line = line
        self.column = column


class NotEntailedError(ElgrError):
    """The ontology does not entail the target consequence."""


class StaticEntailsError(ElgrError):
    """The static part alone entails the target; it cannot be repaired."""


class PreconditionError(ElgrError):
    """An operation was called with arguments violating its precondition."""


class StrategyViolationError(ElgrError):
    """A strategy proposed a replacement violating the repair condition.

    ``justification`` carries the labels of the justification against which
    the condition failed, for error reporting.
    """

    def __init__(self, message: str, justification: tuple[str, ...] = ()):
        super().__init__(message)
        self.justification = justification


class ScriptExhaustedError(ElgrError):
    """A scripted strategy ran out of choices before the repair finished."""


class SearchBudgetExceededError(ElgrError):
    """A weakening search exceeded its node budget."""


class EngineInvariantError(ElgrError):
    """An internal invariant failed; indicates a bug, not bad input."""

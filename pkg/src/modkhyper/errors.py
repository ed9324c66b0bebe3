"""Exception hierarchy shared by every module."""

from __future__ import annotations

from typing import Any


class ModkError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(ModkError, ValueError):
    """Invalid arguments (out-of-range sizes, bad divisibility, ...)."""


class ParseError(ModkError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)


class ConsistencyError(ModkError, RuntimeError):
    """An internal invariant was violated; indicates a pipeline bug."""


class BudgetError(ModkError):
    """Input exceeds the size an exhaustive routine is willing to handle."""


class ConstructionError(ModkError):
    """A randomized construction exhausted its retry budget.

    This is a report, not a crash: ``stage`` names the step that gave up
    and ``report`` carries whatever partial progress and witnesses the
    step collected.
    """

    def __init__(self, stage: str, message: str, report: dict[str, Any] | None = None):
        self.stage = stage
        self.report = dict(report or {})
        super().__init__(f"{stage}: {message}")

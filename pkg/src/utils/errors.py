"""Exception types shared by the nested word toolkit."""

from typing import List, Optional


class NestedWordsError(Exception):
    """Base class for all toolkit errors."""


class MalformedWordError(NestedWordsError, ValueError):
    """Input is not a (well-)nested word over the expected alphabet."""


class FormatError(NestedWordsError):
    """An artifact file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(NestedWordsError):
    """An artifact failed validation; `issues` lists every defect found."""

    def __init__(self, what: str, issues: List[str]):
        self.issues = list(issues)
        summary = "; ".join(self.issues[:3])
        if len(self.issues) > 3:
            summary += f"; ... ({len(self.issues)} defects)"
        super().__init__(f"invalid {what}: {summary}")


class BudgetExceededError(NestedWordsError):
    """A resource budget (states, configurations, output length) ran out."""

    def __init__(self, budget: str, limit: int, detail: str = ""):
        self.budget = budget
        self.limit = limit
        message = f"{budget} budget of {limit} exceeded"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class DeletingTransducerError(NestedWordsError):
    """A closure construction was asked to work on a deleting transducer."""

    def __init__(self, operation: str):
        super().__init__(
            f"{operation} requires a non-deleting transducer; "
            "use src.games.transforms.make_non_deleting to strike out deleted tags"
        )


class NonDeterministicError(NestedWordsError):
    """A deterministic automaton was required."""


class FunctionalityError(NestedWordsError):
    """A transducer declared functional produced two distinct transducts."""


class SizeLimitError(NestedWordsError):
    """A generated fixture would exceed the configured size limit."""

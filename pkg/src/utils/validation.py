"""Diagnostic reports returned by the artifact validators."""

from dataclasses import dataclass, field, asdict
from typing import List

from src.utils.errors import ValidationError


@dataclass
class ValidationReport:
    """Outcome of validating an automaton, transducer or game."""
    subject: str
    issues: List[str] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.issues

    def add(self, issue: str):
        self.issues.append(issue)

    def raise_if_invalid(self):
        """Raise ValidationError when any defect was recorded."""
        if self.issues:
            raise ValidationError(self.subject, self.issues)

    def to_dict(self):
        """Convert to dictionary."""
        result = asdict(self)
        result['is_valid'] = self.is_valid
        return result

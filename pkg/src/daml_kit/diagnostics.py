"""Source spans and coded diagnostics shared by the parser, JSON reader and validator."""

from __future__ import annotations

import enum
from dataclasses import dataclass

MEMORY = "<memory>"


@dataclass(frozen=True, order=True)
class SourceSpan:
    """A 1-based region of a source file; ``end_col`` is exclusive."""

    file: str = MEMORY
    start_line: int = 1
    start_col: int = 1
    end_line: int = 1
    end_col: int = 1

    def __post_init__(self) -> None:
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")
        if min(self.start_line, self.start_col, self.end_line, self.end_col) < 1:
            raise ValueError(f"span positions are 1-based: {self}")

    @property
    def start(self) -> tuple[int, int]:
        return (self.start_line, self.start_col)

    def to(self, other: SourceSpan) -> SourceSpan:
        """Span from the start of ``self`` to the end of ``other``."""
        return SourceSpan(self.file, self.start_line, self.start_col, other.end_line, other.end_col)

    def __str__(self) -> str:
        return f"{self.file}:{self.start_line}:{self.start_col}"


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: SourceSpan

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR

    def sort_key(self) -> tuple:
        return (self.span.file, self.span.start_line, self.span.start_col, self.code)

    def render(self) -> str:
        """``severity[code] file:line:col message``"""
        return f"{self.severity.value}[{self.code}] {self.span} {self.message}"

    def to_dict(self) -> dict:
        return {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
            "file": self.span.file,
            "line": self.span.start_line,
            "col": self.span.start_col,
        }


def sort_diagnostics(diagnostics) -> list[Diagnostic]:
    # stable: equal keys keep rule application order
    return sorted(diagnostics, key=Diagnostic.sort_key)

"""Parse, validate, format, abstract and render data architecture models."""

from .abstraction import LevelError, conforms, derive_hla, level_of
from .diagnostics import Diagnostic, Severity, SourceSpan
from .formatter import format_model
from .lexer import tokenize
from .model import Architecture, behavior_sources, resolve_endpoint, structural_equal
from .parser import ParseResult, parse
from .render import from_json, summarize, to_dot, to_json
from .validator import ValidationReport, rule_catalog, validate

__version__ = "0.1.0"

__all__ = [
    "Architecture",
    "Diagnostic",
    "LevelError",
    "ParseResult",
    "Severity",
    "SourceSpan",
    "ValidationReport",
    "behavior_sources",
    "conforms",
    "derive_hla",
    "format_model",
    "from_json",
    "level_of",
    "parse",
    "resolve_endpoint",
    "rule_catalog",
    "structural_equal",
    "summarize",
    "to_dot",
    "to_json",
    "tokenize",
    "validate",
]

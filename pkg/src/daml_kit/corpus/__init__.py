"""Bundled case-study models.

The ``.daml`` files live next to this module; ``path`` values are relative to
the package directory (``corpus/<id>.daml``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..model import Architecture
from ..parser import parse
from ..validator import validate

ROOT = Path(__file__).resolve().parent


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    path: str
    expected_node_count: int
    expected_error_count: int = 0

    @property
    def file(self) -> Path:
        return ROOT.parent / self.path


_ENTRIES = (
    CorpusEntry("odw", "corpus/odw.daml", 12),
    CorpusEntry("hydre", "corpus/hydre.daml", 7),
    CorpusEntry("errors_pipeline", "corpus/errors_pipeline.daml", 4),
    CorpusEntry("aqss_lla", "corpus/aqss_lla.daml", 6),
    CorpusEntry("aqss_hla", "corpus/aqss_hla.daml", 6),
)


class UnknownCorpusEntry(KeyError):
    pass


def catalog() -> list[CorpusEntry]:
    return list(_ENTRIES)


def entry(id: str) -> CorpusEntry:
    for e in _ENTRIES:
        if e.id == id:
            return e
    raise UnknownCorpusEntry(f"unknown corpus entry {id!r}; known: {', '.join(e.id for e in _ENTRIES)}")


def source(id: str) -> str:
    return entry(id).file.read_text(encoding="utf-8")


def load(id: str) -> Architecture:
    """Parse and validate a bundled model; raises ``ValueError`` if it has errors."""
    e = entry(id)
    result = parse(source(id), e.path)
    if result.model is None:
        raise ValueError(f"corpus entry {id!r} failed to parse: {result.diagnostics[0].render()}")
    report = validate(result.model)
    if report.error_count != e.expected_error_count:
        raise ValueError(f"corpus entry {id!r} has {report.error_count} validation error(s)")
    return result.model


def expected_warnings() -> dict[str, list[str]]:
    """Frozen rendered warnings per entry; a change here is a regression to review."""
    return json.loads((ROOT / "expected_warnings.json").read_text(encoding="utf-8"))

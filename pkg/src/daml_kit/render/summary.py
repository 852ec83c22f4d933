from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from ..formatter import token
from ..model import Architecture, GenerateAction, ProcessAction, StoreAction


def _sorted(values) -> tuple:
    return tuple(sorted(set(values), key=str))


@dataclass(frozen=True)
class DataSummary:
    """Counts plus the data representation attributes a model mentions."""

    node_count: int = 0
    connection_count: int = 0
    elements_by_kind: dict = field(default_factory=dict)
    formats: tuple = ()
    storage_kinds: tuple = ()
    technologies: tuple = ()
    locations: tuple = ()

    @property
    def element_count(self) -> int:
        return sum(self.elements_by_kind.values())

    def to_dict(self) -> dict:
        return {
            "node_count": self.node_count,
            "connection_count": self.connection_count,
            "elements_by_kind": dict(self.elements_by_kind),
            "formats": [token(f) for f in self.formats],
            "storage_kinds": [token(s) for s in self.storage_kinds],
            "technologies": list(self.technologies),
            "locations": [token(l) for l in self.locations],
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"nodes: {self.node_count}", f"connections: {self.connection_count}", f"elements: {self.element_count}"]
        lines += [f"  {k}: {v}" for k, v in d["elements_by_kind"].items()]
        for key in ("formats", "storage_kinds", "technologies", "locations"):
            lines.append(f"{key.replace('_', ' ')}: {', '.join(d[key]) or '-'}")
        return "\n".join(lines) + "\n"


def summarize(arch: Architecture) -> DataSummary:
    kinds: Counter = Counter()
    formats, storage, tech, locations = [], [], [], []
    for _, e in arch.elements():
        kinds[e.kind] += 1
        if isinstance(e, GenerateAction):
            formats.append(e.representation.format)
        elif isinstance(e, ProcessAction):
            formats += [f for f in (e.from_format, e.to_format) if f is not None]
        elif isinstance(e, StoreAction):
            rep = e.representation
            if rep.format is not None:
                formats.append(rep.format)
            storage.append(rep.storage.kind)
            if rep.storage.technology:
                tech.append(rep.storage.technology)
            if rep.location is not None:
                locations.append(rep.location)
    return DataSummary(
        node_count=len(arch.nodes),
        connection_count=len(arch.connections),
        elements_by_kind=dict(sorted(kinds.items())),
        formats=_sorted(formats),
        storage_kinds=_sorted(storage),
        technologies=_sorted(tech),
        locations=_sorted(locations),
    )

"""In-memory data architecture model.

Every value here is an immutable dataclass. Sequences are stored as tuples so
models can be hashed, shared between threads and compared structurally. Source
spans are carried for diagnostics but excluded from equality, so two models
parsed from differently formatted text compare equal.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .diagnostics import SourceSpan

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*\Z")


class ModelError(ValueError):
    """Raised when a value would violate a constructor-level invariant."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


def _span():
    return field(default=None, compare=False, repr=False)


def _check_identifier(name: str, what: str) -> None:
    if not isinstance(name, str) or not IDENTIFIER.match(name):
        raise ModelError("E014", f"invalid {what} identifier {name!r}")


def _freeze(obj, attr: str) -> None:
    object.__setattr__(obj, attr, tuple(getattr(obj, attr)))


class _Token(enum.Enum):
    """Enum whose values are the concrete-syntax spellings."""

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str):
        return cls(text)


class Level(_Token):
    HLA = "HLA"
    LLA = "LLA"


class NodeKind(_Token):
    SOURCE = "source"
    INGESTION = "ingestion"
    PROCESSING = "processing"
    STORAGE = "storage"
    ANALYSIS = "analysis"
    CONSUMER = "consumer"
    GENERIC = "generic"


class Direction(_Token):
    IN = "in"
    OUT = "out"


class Format(_Token):
    JSON = "json"
    XML = "xml"
    CSV = "csv"
    TEXT = "text"
    VIDEO = "video"
    IMAGE = "image"
    AUDIO = "audio"
    AVRO = "avro"
    COLUMN_ORIENTED = "column-oriented"
    RELATIONAL = "relational"
    KEY_VALUE = "key-value"
    DOCUMENT = "document"
    GRAPH = "graph"
    TIME_SERIES = "time-series"
    BINARY = "binary"


class StorageKind(_Token):
    FILE_SYSTEM = "filesystem"
    RELATIONAL_DB = "relational-db"
    COLUMN_DB = "column-db"
    DOCUMENT_DB = "document-db"
    KEY_VALUE_DB = "key-value-db"
    GRAPH_DB = "graph-db"
    TIME_SERIES_DB = "time-series-db"
    OBJECT_STORE = "object-store"
    MESSAGE_QUEUE = "message-queue"


class Location(_Token):
    CLOUD = "cloud"
    EDGE = "edge"
    ON_PREMISE = "on-premise"
    HYBRID = "hybrid"


class IngestMode(_Token):
    STREAM = "stream"
    BATCH = "batch"


class Processing(_Token):
    REALTIME = "realtime"
    BATCH = "batch"
    HYBRID = "hybrid"


class AnalysisKind(_Token):
    DESCRIPTIVE = "descriptive"
    DIAGNOSTIC = "diagnostic"
    PREDICTIVE = "predictive"
    PRESCRIPTIVE = "prescriptive"


class SubOperation(_Token):
    CLEAN = "clean"
    FILTER = "filter"
    TRANSFORM = "transform"
    CLASSIFY = "classify"
    REDUCE = "reduce"
    VALIDATE = "validate"
    AGGREGATE = "aggregate"
    JOIN = "join"
    ENRICH = "enrich"


@dataclass(frozen=True)
class Other:
    """Escape hatch for formats and storage kinds outside the closed lists."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ModelError("E015", "other(...) payload must be non-empty")

    def __str__(self) -> str:
        return f"other({self.value})"


DataFormat = Union[Format, Other]
StorageType = Union[StorageKind, Other]


@dataclass(frozen=True)
class Storage:
    kind: StorageType
    technology: Optional[str] = None


@dataclass(frozen=True)
class DataRepresentation:
    format: Optional[DataFormat] = None
    storage: Optional[Storage] = None
    location: Optional[Location] = None


@dataclass(frozen=True)
class Port:
    name: str
    direction: Direction
    span: Optional[SourceSpan] = _span()

    def __post_init__(self) -> None:
        _check_identifier(self.name, "port")


# -- behavior elements --------------------------------------------------------


@dataclass(frozen=True)
class ReceiveEvent:
    name: str
    port: Optional[str] = None
    span: Optional[SourceSpan] = _span()

    kind = "receive"

    def __post_init__(self) -> None:
        _check_identifier(self.name, "element")
        if self.port is not None:
            _check_identifier(self.port, "port")


@dataclass(frozen=True)
class GenerateAction:
    name: str
    representation: DataRepresentation
    source: Optional[str] = None
    span: Optional[SourceSpan] = _span()

    kind = "generate"

    def __post_init__(self) -> None:
        _check_identifier(self.name, "element")
        if self.representation.format is None:
            raise ModelError("E014", f"generate {self.name!r} needs a data format")

    @property
    def output_format(self) -> Optional[DataFormat]:
        return self.representation.format


@dataclass(frozen=True)
class IngestAction:
    name: str
    mode: IngestMode
    span: Optional[SourceSpan] = _span()

    kind = "ingest"

    def __post_init__(self) -> None:
        _check_identifier(self.name, "element")


@dataclass(frozen=True)
class ProcessAction:
    name: str
    processing: Processing
    ops: tuple[SubOperation, ...] = ()
    from_format: Optional[DataFormat] = None
    to_format: Optional[DataFormat] = None
    span: Optional[SourceSpan] = _span()

    kind = "process"

    def __post_init__(self) -> None:
        _check_identifier(self.name, "element")
        _freeze(self, "ops")

    @property
    def output_format(self) -> Optional[DataFormat]:
        return self.to_format


@dataclass(frozen=True)
class StoreAction:
    name: str
    representation: DataRepresentation
    span: Optional[SourceSpan] = _span()

    kind = "store"

    def __post_init__(self) -> None:
        _check_identifier(self.name, "element")
        if self.representation.storage is None:
            raise ModelError("E014", f"store {self.name!r} needs a storage technology")

    @property
    def output_format(self) -> Optional[DataFormat]:
        return self.representation.format


@dataclass(frozen=True)
class AnalyzeAction:
    name: str
    analysis: AnalysisKind
    span: Optional[SourceSpan] = _span()

    kind = "analyze"

    def __post_init__(self) -> None:
        _check_identifier(self.name, "element")


@dataclass(frozen=True)
class ConsumeAction:
    name: str
    by: Optional[str] = None
    span: Optional[SourceSpan] = _span()

    kind = "consume"

    def __post_init__(self) -> None:
        _check_identifier(self.name, "element")


@dataclass(frozen=True)
class SendAction:
    name: str
    port: str
    span: Optional[SourceSpan] = _span()

    kind = "send"

    def __post_init__(self) -> None:
        _check_identifier(self.name, "element")
        _check_identifier(self.port, "port")


BehaviorElement = Union[
    ReceiveEvent,
    GenerateAction,
    IngestAction,
    ProcessAction,
    StoreAction,
    AnalyzeAction,
    ConsumeAction,
    SendAction,
]

ELEMENT_KINDS = ("receive", "generate", "ingest", "process", "store", "analyze", "consume", "send")


@dataclass(frozen=True)
class Link:
    source: str
    target: str
    span: Optional[SourceSpan] = _span()

    def __post_init__(self) -> None:
        _check_identifier(self.source, "element")
        _check_identifier(self.target, "element")


def _first_duplicate(names):
    seen = set()
    for name in names:
        if name in seen:
            return name
        seen.add(name)
    return None


@dataclass(frozen=True)
class NodeBehavior:
    elements: tuple[BehaviorElement, ...] = ()
    links: tuple[Link, ...] = ()
    span: Optional[SourceSpan] = _span()

    def __post_init__(self) -> None:
        _freeze(self, "elements")
        _freeze(self, "links")
        dup = _first_duplicate(e.name for e in self.elements)
        if dup is not None:
            raise ModelError("E003", f"duplicate element name {dup!r} in behavior")

    def element(self, name: str) -> Optional[BehaviorElement]:
        for e in self.elements:
            if e.name == name:
                return e
        return None


@dataclass(frozen=True)
class DataNode:
    name: str
    kind: Optional[NodeKind] = None
    description: Optional[str] = None
    ports: tuple[Port, ...] = ()
    behavior: Optional[NodeBehavior] = None
    span: Optional[SourceSpan] = _span()

    def __post_init__(self) -> None:
        _check_identifier(self.name, "node")
        _freeze(self, "ports")
        dup = _first_duplicate(p.name for p in self.ports)
        if dup is not None:
            raise ModelError("E002", f"duplicate port name {dup!r} in node {self.name!r}")

    def port(self, name: str) -> Optional[Port]:
        for p in self.ports:
            if p.name == name:
                return p
        return None


@dataclass(frozen=True)
class Endpoint:
    node: str
    port: str

    def __str__(self) -> str:
        return f"{self.node}.{self.port}"


@dataclass(frozen=True)
class Connection:
    source: Endpoint
    target: Endpoint
    label: Optional[str] = None
    span: Optional[SourceSpan] = _span()

    def __post_init__(self) -> None:
        for end in (self.source, self.target):
            _check_identifier(end.node, "node")
            _check_identifier(end.port, "port")


@dataclass(frozen=True)
class Architecture:
    name: str
    level: Level
    nodes: tuple[DataNode, ...] = ()
    connections: tuple[Connection, ...] = ()
    span: Optional[SourceSpan] = _span()

    def __post_init__(self) -> None:
        _freeze(self, "nodes")
        _freeze(self, "connections")
        dup = _first_duplicate(n.name for n in self.nodes)
        if dup is not None:
            raise ModelError("E001", f"duplicate node name {dup!r}")

    def node(self, name: str) -> Optional[DataNode]:
        for n in self.nodes:
            if n.name == name:
                return n
        return None

    def elements(self):
        """Yield ``(node, element)`` for every behavior element in declaration order."""
        for n in self.nodes:
            if n.behavior is not None:
                for e in n.behavior.elements:
                    yield n, e


def resolve_endpoint(arch: Architecture, node_name: str, port_name: str):
    """Return ``(node, port)`` when both exist, else ``None``."""
    node = arch.node(node_name)
    if node is None:
        return None
    port = node.port(port_name)
    if port is None:
        return None
    return node, port


def behavior_sources(behavior: NodeBehavior) -> set[str]:
    """Names of the elements that no link points into."""
    targets = {link.target for link in behavior.links}
    return {e.name for e in behavior.elements if e.name not in targets}


def structural_equal(a: Architecture, b: Architecture) -> bool:
    """Compare two models ignoring source spans; order is significant."""
    return a == b

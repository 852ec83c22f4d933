"""Version-tagged canonical JSON interchange.

Every object is written with a fixed key order and every key present (``null``
when unset), so the text is byte-stable. The reader is strict: unknown or
missing keys, wrong types and unsupported versions are coded diagnostics.
"""

from __future__ import annotations

import json

from ..diagnostics import MEMORY, SourceSpan
from ..model import (
    AnalysisKind,
    AnalyzeAction,
    Architecture,
    Connection,
    ConsumeAction,
    DataNode,
    DataRepresentation,
    Direction,
    Endpoint,
    Format,
    GenerateAction,
    IngestAction,
    IngestMode,
    Level,
    Link,
    Location,
    ModelError,
    NodeBehavior,
    NodeKind,
    Other,
    Port,
    Processing,
    ProcessAction,
    ReceiveEvent,
    SendAction,
    Storage,
    StorageKind,
    StoreAction,
    SubOperation,
)
from ..parser import ParseResult
from ..validator import diagnostic

VERSION = "1.0"


def _enum(value):
    if value is None:
        return None
    if isinstance(value, Other):
        return {"other": value.value}
    return value.value


def _element(e) -> dict:
    d = {"type": e.kind, "name": e.name}
    if isinstance(e, ReceiveEvent):
        d["port"] = e.port
    elif isinstance(e, GenerateAction):
        d["format"] = _enum(e.representation.format)
        d["source"] = e.source
    elif isinstance(e, IngestAction):
        d["mode"] = _enum(e.mode)
    elif isinstance(e, ProcessAction):
        d["processing"] = _enum(e.processing)
        d["ops"] = [_enum(o) for o in e.ops]
        d["from"] = _enum(e.from_format)
        d["to"] = _enum(e.to_format)
    elif isinstance(e, StoreAction):
        rep = e.representation
        d["storage"] = {"kind": _enum(rep.storage.kind), "technology": rep.storage.technology}
        d["format"] = _enum(rep.format)
        d["location"] = _enum(rep.location)
    elif isinstance(e, AnalyzeAction):
        d["analysis"] = _enum(e.analysis)
    elif isinstance(e, ConsumeAction):
        d["by"] = e.by
    elif isinstance(e, SendAction):
        d["port"] = e.port
    return d


def _node(n: DataNode) -> dict:
    behavior = None
    if n.behavior is not None:
        behavior = {
            "elements": [_element(e) for e in n.behavior.elements],
            "links": [{"from": l.source, "to": l.target} for l in n.behavior.links],
        }
    return {
        "name": n.name,
        "kind": _enum(n.kind),
        "description": n.description,
        "ports": [{"name": p.name, "direction": p.direction.value} for p in n.ports],
        "behavior": behavior,
    }


def to_dict(arch: Architecture) -> dict:
    return {
        "daml": VERSION,
        "name": arch.name,
        "level": arch.level.value,
        "nodes": [_node(n) for n in arch.nodes],
        "connections": [
            {
                "from": {"node": c.source.node, "port": c.source.port},
                "to": {"node": c.target.node, "port": c.target.port},
                "label": c.label,
            }
            for c in arch.connections
        ],
    }


def to_json(arch: Architecture) -> str:
    return json.dumps(to_dict(arch), indent=2, ensure_ascii=False) + "\n"


# -- reader -------------------------------------------------------------------


class _SchemaError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


def _obj(value, path: str, keys: tuple[str, ...]) -> dict:
    if not isinstance(value, dict):
        raise _SchemaError("E017", f"{path}: expected an object")
    missing = [k for k in keys if k not in value]
    if missing:
        raise _SchemaError("E017", f"{path}: missing key '{missing[0]}'")
    extra = [k for k in value if k not in keys]
    if extra:
        raise _SchemaError("E017", f"{path}: unknown key '{extra[0]}'")
    return value


def _str(value, path: str, optional: bool = False):
    if value is None and optional:
        return None
    if not isinstance(value, str):
        raise _SchemaError("E017", f"{path}: expected a string" + (" or null" if optional else ""))
    return value


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        raise _SchemaError("E017", f"{path}: expected an array")
    return value


def _choice(enum_cls, value, path: str, optional: bool = False, other: bool = False):
    if value is None and optional:
        return None
    if other and isinstance(value, dict):
        payload = _str(_obj(value, path, ("other",))["other"], f"{path}.other")
        if not payload:
            raise _SchemaError("E015", f"{path}: other payload must be non-empty")
        return Other(payload)
    try:
        return enum_cls(value)
    except (ValueError, TypeError):
        options = ", ".join(m.value for m in enum_cls)
        raise _SchemaError("E017", f"{path}: expected one of {options}") from None


_ELEMENT_KEYS = {
    "receive": ("port",),
    "generate": ("format", "source"),
    "ingest": ("mode",),
    "process": ("processing", "ops", "from", "to"),
    "store": ("storage", "format", "location"),
    "analyze": ("analysis",),
    "consume": ("by",),
    "send": ("port",),
}


def _read_element(d, path: str):
    if not isinstance(d, dict):
        raise _SchemaError("E017", f"{path}: expected an object")
    kind = d.get("type")
    if kind not in _ELEMENT_KEYS:
        raise _SchemaError("E017", f"{path}.type: expected one of {', '.join(_ELEMENT_KEYS)}")
    d = _obj(d, path, ("type", "name", *_ELEMENT_KEYS[kind]))
    name = _str(d["name"], f"{path}.name")
    if kind == "receive":
        return ReceiveEvent(name, _str(d["port"], f"{path}.port", optional=True))
    if kind == "generate":
        fmt = _choice(Format, d["format"], f"{path}.format", other=True)
        return GenerateAction(name, DataRepresentation(format=fmt), _str(d["source"], f"{path}.source", optional=True))
    if kind == "ingest":
        return IngestAction(name, _choice(IngestMode, d["mode"], f"{path}.mode"))
    if kind == "process":
        ops = tuple(_choice(SubOperation, o, f"{path}.ops[{i}]") for i, o in enumerate(_list(d["ops"], f"{path}.ops")))
        return ProcessAction(
            name,
            _choice(Processing, d["processing"], f"{path}.processing"),
            ops,
            _choice(Format, d["from"], f"{path}.from", optional=True, other=True),
            _choice(Format, d["to"], f"{path}.to", optional=True, other=True),
        )
    if kind == "store":
        s = _obj(d["storage"], f"{path}.storage", ("kind", "technology"))
        storage = Storage(
            _choice(StorageKind, s["kind"], f"{path}.storage.kind", other=True),
            _str(s["technology"], f"{path}.storage.technology", optional=True),
        )
        rep = DataRepresentation(
            _choice(Format, d["format"], f"{path}.format", optional=True, other=True),
            storage,
            _choice(Location, d["location"], f"{path}.location", optional=True),
        )
        return StoreAction(name, rep)
    if kind == "analyze":
        return AnalyzeAction(name, _choice(AnalysisKind, d["analysis"], f"{path}.analysis"))
    if kind == "consume":
        return ConsumeAction(name, _str(d["by"], f"{path}.by", optional=True))
    return SendAction(name, _str(d["port"], f"{path}.port"))


def _read_node(d, path: str) -> DataNode:
    d = _obj(d, path, ("name", "kind", "description", "ports", "behavior"))
    ports = []
    for i, p in enumerate(_list(d["ports"], f"{path}.ports")):
        pp = f"{path}.ports[{i}]"
        p = _obj(p, pp, ("name", "direction"))
        ports.append(Port(_str(p["name"], f"{pp}.name"), _choice(Direction, p["direction"], f"{pp}.direction")))
    behavior = None
    if d["behavior"] is not None:
        bp = f"{path}.behavior"
        b = _obj(d["behavior"], bp, ("elements", "links"))
        elements = [_read_element(e, f"{bp}.elements[{i}]") for i, e in enumerate(_list(b["elements"], f"{bp}.elements"))]
        links = []
        for i, l in enumerate(_list(b["links"], f"{bp}.links")):
            lp = f"{bp}.links[{i}]"
            l = _obj(l, lp, ("from", "to"))
            links.append(Link(_str(l["from"], f"{lp}.from"), _str(l["to"], f"{lp}.to")))
        behavior = NodeBehavior(tuple(elements), tuple(links))
    return DataNode(
        _str(d["name"], f"{path}.name"),
        _choice(NodeKind, d["kind"], f"{path}.kind", optional=True),
        _str(d["description"], f"{path}.description", optional=True),
        tuple(ports),
        behavior,
    )


def _read(data) -> Architecture:
    if not isinstance(data, dict):
        raise _SchemaError("E017", "$: expected an object")
    if "daml" in data and data["daml"] != VERSION:
        raise _SchemaError("E018", f"$.daml: unsupported version {data['daml']!r} (expected {VERSION!r})")
    data = _obj(data, "$", ("daml", "name", "level", "nodes", "connections"))
    nodes = [_read_node(n, f"$.nodes[{i}]") for i, n in enumerate(_list(data["nodes"], "$.nodes"))]
    connections = []
    for i, c in enumerate(_list(data["connections"], "$.connections")):
        cp = f"$.connections[{i}]"
        c = _obj(c, cp, ("from", "to", "label"))
        ends = []
        for key in ("from", "to"):
            e = _obj(c[key], f"{cp}.{key}", ("node", "port"))
            ends.append(Endpoint(_str(e["node"], f"{cp}.{key}.node"), _str(e["port"], f"{cp}.{key}.port")))
        connections.append(Connection(ends[0], ends[1], _str(c["label"], f"{cp}.label", optional=True)))
    return Architecture(_str(data["name"], "$.name"), _choice(Level, data["level"], "$.level"), tuple(nodes), tuple(connections))


def from_json(text: str, file: str = MEMORY) -> ParseResult:
    """Inverse of :func:`to_json`; problems come back as coded diagnostics."""
    start = SourceSpan(file)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        at = SourceSpan(file, exc.lineno, exc.colno, exc.lineno, exc.colno)
        return ParseResult(None, (diagnostic("E016", f"malformed JSON: {exc.msg}", at),))
    try:
        model = _read(data)
    except _SchemaError as exc:
        return ParseResult(None, (diagnostic(exc.code, str(exc), start),))
    except ModelError as exc:
        # duplicate names keep their rule code; a bad identifier is a schema problem
        code = "E017" if exc.code == "E014" else exc.code
        return ParseResult(None, (diagnostic(code, str(exc), start),))
    return ParseResult(model)

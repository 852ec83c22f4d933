"""Canonical pretty-printer: 2-space indent, one statement per line, LF, trailing newline."""

from __future__ import annotations

from .model import (
    AnalyzeAction,
    Architecture,
    ConsumeAction,
    DataNode,
    GenerateAction,
    IngestAction,
    Other,
    ProcessAction,
    ReceiveEvent,
    SendAction,
    StoreAction,
)

INDENT = "  "


def quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def token(value) -> str:
    """Concrete spelling of an enum member or ``Other`` payload."""
    if isinstance(value, Other):
        return f"other({quote(value.value)})"
    return value.value


def _block(head: str, attrs: list[str], depth: int) -> list[str]:
    pad = INDENT * depth
    if not attrs:
        return [f"{pad}{head} {{}}"]
    return [f"{pad}{head} {{", *(INDENT * (depth + 1) + a for a in attrs), f"{pad}}}"]


def _element(e, depth: int) -> list[str]:
    pad = INDENT * depth
    if isinstance(e, ReceiveEvent):
        tail = f" from {e.port}" if e.port is not None else ""
        return [f"{pad}on receive {e.name}{tail}"]
    if isinstance(e, SendAction):
        return [f"{pad}send {e.name} via {e.port}"]
    attrs: list[str] = []
    if isinstance(e, GenerateAction):
        attrs.append(f"format {token(e.representation.format)}")
        if e.source is not None:
            attrs.append(f"source {quote(e.source)}")
    elif isinstance(e, IngestAction):
        attrs.append(f"mode {token(e.mode)}")
    elif isinstance(e, ProcessAction):
        attrs.append(f"type {token(e.processing)}")
        if e.ops:
            attrs.append("ops [" + ", ".join(token(o) for o in e.ops) + "]")
        if e.from_format is not None:
            attrs.append(f"from {token(e.from_format)}")
        if e.to_format is not None:
            attrs.append(f"to {token(e.to_format)}")
    elif isinstance(e, StoreAction):
        rep = e.representation
        tech = f"tech {token(rep.storage.kind)}"
        if rep.storage.technology is not None:
            tech += f" {quote(rep.storage.technology)}"
        attrs.append(tech)
        if rep.format is not None:
            attrs.append(f"format {token(rep.format)}")
        if rep.location is not None:
            attrs.append(f"location {token(rep.location)}")
    elif isinstance(e, AnalyzeAction):
        attrs.append(f"type {token(e.analysis)}")
    elif isinstance(e, ConsumeAction):
        if e.by is not None:
            attrs.append(f"by {quote(e.by)}")
    else:
        raise TypeError(f"not a behavior element: {e!r}")
    return _block(f"{e.kind} {e.name}", attrs, depth)


def _node(node: DataNode) -> list[str]:
    head = f"node {node.name}"
    if node.kind is not None:
        head += f" kind {token(node.kind)}"
    body: list[str] = []
    if node.description is not None:
        body.append(f"{INDENT * 2}description {quote(node.description)}")
    for p in node.ports:
        body.append(f"{INDENT * 2}{token(p.direction)} port {p.name}")
    b = node.behavior
    if b is not None:
        inner = []
        for e in b.elements:
            inner += _element(e, 3)
        inner += [f"{INDENT * 3}link {l.source} -> {l.target}" for l in b.links]
        if inner:
            body += [f"{INDENT * 2}behavior {{", *inner, f"{INDENT * 2}}}"]
        else:
            body.append(f"{INDENT * 2}behavior {{}}")
    if not body:
        return [f"{INDENT}{head} {{}}"]
    return [f"{INDENT}{head} {{", *body, f"{INDENT}}}"]


def format_model(arch: Architecture) -> str:
    lines = [f"architecture {quote(arch.name)} {{", f"{INDENT}level {token(arch.level)}"]
    for node in arch.nodes:
        lines.append("")
        lines += _node(node)
    if arch.connections:
        lines.append("")
    for c in arch.connections:
        line = f"{INDENT}connect {c.source} -> {c.target}"
        if c.label is not None:
            line += f" label {quote(c.label)}"
        lines.append(line)
    lines.append("}")
    return "\n".join(lines) + "\n"

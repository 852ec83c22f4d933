"""Graphviz DOT export.

Each data node becomes a cluster; behavior elements are shape-coded vertices
inside it. Vertex IDs come from declaration indices (``n<i>`` for the node
anchor, ``n<i>_e<j>`` for elements), never from names.
"""

from __future__ import annotations

from ..formatter import token
from ..model import (
    AnalyzeAction,
    Architecture,
    GenerateAction,
    IngestAction,
    Level,
    ProcessAction,
    ReceiveEvent,
    SendAction,
    StoreAction,
)
from ..validator import validate

SHAPES = {
    "receive": "ellipse",
    "generate": "house",
    "ingest": "trapezium",
    "process": "box",
    "store": "cylinder",
    "analyze": "diamond",
    "consume": "component",
    "send": "cds",
}

PALETTE = {
    "source": "#e3f2fd",
    "ingestion": "#e8f5e9",
    "processing": "#fff3e0",
    "storage": "#ede7f6",
    "analysis": "#fce4ec",
    "consumer": "#e0f7fa",
    "generic": "#f5f5f5",
    None: "#ffffff",
}


class RenderError(ValueError):
    pass


def escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def _q(text: str) -> str:
    return '"' + escape(text) + '"'


def _detail(e) -> str:
    if isinstance(e, ReceiveEvent):
        return f"receive from {e.port}" if e.port else "receive"
    if isinstance(e, SendAction):
        return f"send via {e.port}"
    if isinstance(e, GenerateAction):
        return f"generate: {token(e.representation.format)}"
    if isinstance(e, ProcessAction):
        parts = [token(e.processing)]
        if e.ops:
            parts.append("/".join(token(o) for o in e.ops))
        if e.from_format is not None or e.to_format is not None:
            src = token(e.from_format) if e.from_format is not None else "?"
            dst = token(e.to_format) if e.to_format is not None else "?"
            parts.append(f"{src} -> {dst}")
        return "process: " + ", ".join(parts)
    if isinstance(e, StoreAction):
        rep = e.representation
        parts = [rep.storage.technology or token(rep.storage.kind)]
        if rep.storage.technology:
            parts.append(f"({token(rep.storage.kind)})")
        if rep.format is not None:
            parts.append(token(rep.format))
        if rep.location is not None:
            parts.append(f"@{token(rep.location)}")
        return "store: " + " ".join(parts)
    if isinstance(e, IngestAction):
        return f"ingest: {token(e.mode)}"
    if isinstance(e, AnalyzeAction):
        return f"analyze: {token(e.analysis)}"
    return f"consume: {e.by}" if e.by else "consume"


def _sender(node, index: int, port: str):
    if node.behavior is not None:
        for j, e in enumerate(node.behavior.elements):
            if isinstance(e, SendAction) and e.port == port:
                return f"n{index}_e{j}"
    return None


def _receiver(node, index: int, port: str):
    if node.behavior is not None:
        for j, e in enumerate(node.behavior.elements):
            if isinstance(e, ReceiveEvent) and e.port in (port, None):
                return f"n{index}_e{j}"
    return None


def to_dot(arch: Architecture, collapse: bool = False) -> str:
    """Render ``arch`` as a DOT digraph; refuses models with validation errors."""
    report = validate(arch)
    if report.error_count:
        raise RenderError(f"cannot render a model with {report.error_count} validation error(s)")
    detailed = arch.level is Level.LLA and not collapse

    out = [
        f"digraph {_q(arch.name)} {{",
        "  compound=true;",
        "  rankdir=LR;",
        '  node [fontname="Helvetica", fontsize=10];',
        '  edge [fontname="Helvetica", fontsize=9];',
    ]
    index = {n.name: i for i, n in enumerate(arch.nodes)}
    for i, node in enumerate(arch.nodes):
        kind = token(node.kind) if node.kind is not None else None
        title = node.name + (f"\n<<{kind}>>" if kind else "")
        out.append(f"  subgraph cluster_n{i} {{")
        out.append(f"    label={_q(title)};")
        out.append('    style="rounded,filled";')
        out.append(f'    fillcolor="{PALETTE[kind]}";')
        if detailed:
            out.append(f'    n{i} [shape=point, style=invis, label=""];')
        else:
            out.append(f"    n{i} [shape=box, style=rounded, label={_q(node.name)}];")
        if detailed and node.behavior is not None:
            b = node.behavior
            ids = {e.name: f"n{i}_e{j}" for j, e in enumerate(b.elements)}
            for j, e in enumerate(b.elements):
                label = f"{e.name}\n{_detail(e)}"
                out.append(f"    n{i}_e{j} [shape={SHAPES[e.kind]}, label={_q(label)}];")
            for link in b.links:
                out.append(f"    {ids[link.source]} -> {ids[link.target]};")
        out.append("  }")

    for c in arch.connections:
        si, ti = index[c.source.node], index[c.target.node]
        src = dst = None
        if detailed:
            src = _sender(arch.nodes[si], si, c.source.port)
            dst = _receiver(arch.nodes[ti], ti, c.target.port)
        attrs = ["style=bold"]
        if src is None:
            attrs.append(f"ltail=cluster_n{si}")
        if dst is None:
            attrs.append(f"lhead=cluster_n{ti}")
        label = f"{c.source.port} -> {c.target.port}"
        if c.label is not None:
            label = f"{c.label}\n{label}"
        attrs.append(f"label={_q(label)}")
        out.append(f"  {src or f'n{si}'} -> {dst or f'n{ti}'} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"

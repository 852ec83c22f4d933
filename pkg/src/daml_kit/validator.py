"""Well-formedness and level-conformance rules.

Rules never raise; every finding is a :class:`Diagnostic`. ``validate`` runs
each rule once and returns the findings sorted by file, position and code.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .diagnostics import Diagnostic, Severity, SourceSpan, sort_diagnostics
from .model import (
    Architecture,
    DataNode,
    Direction,
    GenerateAction,
    Level,
    NodeBehavior,
    ProcessAction,
    ReceiveEvent,
    SendAction,
    resolve_endpoint,
)

ERROR = Severity.ERROR
WARNING = Severity.WARNING


class Rule(NamedTuple):
    code: str
    severity: Severity
    description: str


# Model rules (validate) come first, then the reader-level codes the parser and
# JSON importer emit.
_CATALOG = (
    Rule("E001", ERROR, "duplicate node name"),
    Rule("E002", ERROR, "duplicate port name in node"),
    Rule("E003", ERROR, "duplicate element name in behavior"),
    Rule("E004", ERROR, "connection endpoint unresolved"),
    Rule("E005", ERROR, "connection direction mismatch"),
    Rule("E006", ERROR, "link endpoint unknown"),
    Rule("E007", ERROR, "link targets an event"),
    Rule("E008", ERROR, "behavior link cycle"),
    Rule("E009", ERROR, "send via unknown/non-Out port"),
    Rule("E010", ERROR, "receive from unknown/non-In port"),
    Rule("E011", ERROR, "LLA node missing behavior"),
    Rule("E012", ERROR, "HLA node has behavior"),
    Rule("W101", WARNING, "unreachable behavior element"),
    Rule("W102", WARNING, "out port never used by a send"),
    Rule("W103", WARNING, "in port never used by a receive"),
    Rule("W104", WARNING, "isolated node in multi-node model"),
    Rule("W105", WARNING, "dangling port"),
    Rule("W106", WARNING, "process input format differs from predecessor output format"),
    Rule("E013", ERROR, "lexical error"),
    Rule("E014", ERROR, "syntax error"),
    Rule("E015", ERROR, "empty other(...) payload"),
    Rule("E016", ERROR, "malformed JSON"),
    Rule("E017", ERROR, "JSON schema violation"),
    Rule("E018", ERROR, "unsupported interchange version"),
)

MODEL_RULES = tuple(r.code for r in _CATALOG[:18])
_BY_CODE = {r.code: r for r in _CATALOG}


def rule_catalog() -> list[Rule]:
    return list(_CATALOG)


def diagnostic(code: str, message: str, span: SourceSpan | None, fallback: SourceSpan | None = None) -> Diagnostic:
    """Build a diagnostic whose severity comes from the catalog."""
    rule = _BY_CODE[code]
    return Diagnostic(rule.severity, code, message, span or fallback or SourceSpan())


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[Diagnostic, ...] = ()
    error_count: int = field(init=False)
    warning_count: int = field(init=False)

    def __post_init__(self) -> None:
        diags = tuple(sort_diagnostics(self.diagnostics))
        object.__setattr__(self, "diagnostics", diags)
        object.__setattr__(self, "error_count", sum(d.is_error for d in diags))
        object.__setattr__(self, "warning_count", len(diags) - self.error_count)

    @property
    def ok(self) -> bool:
        return self.error_count == 0


# -- name uniqueness (also used by the readers, which see raw lists) ----------


def check_unique(items, code: str, what: str, fallback: SourceSpan | None = None) -> list[Diagnostic]:
    """Report every repeat of a name in ``items`` (objects with ``name`` and ``span``)."""
    seen: set[str] = set()
    out = []
    for item in items:
        if item.name in seen:
            out.append(diagnostic(code, f"duplicate {what} name '{item.name}'", item.span, fallback))
        seen.add(item.name)
    return out


# -- behavior graphs ----------------------------------------------------------


def _graph(behavior: NodeBehavior):
    names = [e.name for e in behavior.elements]
    known = set(names)
    succ: dict[str, list[str]] = {n: [] for n in names}
    links = []
    for link in behavior.links:
        if link.source in known and link.target in known:
            succ[link.source].append(link.target)
            links.append(link)
    return names, succ, links


def _strongly_connected(names, succ):
    """Tarjan's algorithm, iterative. Returns components in discovery order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components = []
    counter = 0
    for root in names:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            targets = succ[v]
            while i < len(targets):
                w = targets[i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return components


def behavior_cycles(behavior: NodeBehavior) -> list[frozenset[str]]:
    """Element sets of the cyclic strongly connected components of the link graph."""
    names, succ, _ = _graph(behavior)
    cyclic = []
    for comp in _strongly_connected(names, succ):
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            cyclic.append(frozenset(comp))
    order = {n: i for i, n in enumerate(names)}
    cyclic.sort(key=lambda c: min(order[n] for n in c))
    return cyclic


def is_trigger(element) -> bool:
    """Events and generate actions start a dataflow on their own."""
    return isinstance(element, (ReceiveEvent, GenerateAction))


def unreachable_elements(behavior: NodeBehavior) -> list[str]:
    """Elements no path reaches from a trigger element that has no incoming link."""
    names, succ, links = _graph(behavior)
    targets = {link.target for link in links}
    roots = [e.name for e in behavior.elements if is_trigger(e) and e.name not in targets]
    seen = set(roots)
    queue = deque(roots)
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return [n for n in names if n not in seen]


def check_behavior_graph(behavior: NodeBehavior, fallback: SourceSpan | None = None) -> list[Diagnostic]:
    """E006, E007, E008 and W101 for one behavior."""
    out = []
    fallback = behavior.span or fallback
    known = {e.name: e for e in behavior.elements}
    for link in behavior.links:
        for end in (link.source, link.target):
            if end not in known:
                out.append(diagnostic("E006", f"link endpoint '{end}' is not an element of this behavior", link.span, fallback))
        target = known.get(link.target)
        if isinstance(target, ReceiveEvent):
            out.append(diagnostic("E007", f"link targets event '{link.target}'; events only start a dataflow", link.span, fallback))

    _, _, links = _graph(behavior)
    for comp in behavior_cycles(behavior):
        first = next(l for l in links if l.source in comp and l.target in comp)
        members = ", ".join(e.name for e in behavior.elements if e.name in comp)
        out.append(diagnostic("E008", f"behavior links form a cycle through {members}", first.span, fallback))

    for name in unreachable_elements(behavior):
        out.append(
            diagnostic("W101", f"element '{name}' is unreachable from any event or generate action", known[name].span, fallback)
        )
    return out


# -- per-node rules -----------------------------------------------------------


def _check_node(arch: Architecture, node: DataNode) -> list[Diagnostic]:
    out = []
    fallback = node.span or arch.span
    out += check_unique(node.ports, "E002", "port", fallback)
    behavior = node.behavior

    if arch.level is Level.LLA and behavior is None:
        out.append(diagnostic("E011", f"LLA node '{node.name}' has no behavior", node.span, fallback))
    if arch.level is Level.HLA and behavior is not None:
        out.append(diagnostic("E012", f"HLA node '{node.name}' must not declare a behavior", behavior.span, fallback))
    if behavior is None:
        return out

    out += check_unique(behavior.elements, "E003", "element", fallback)
    out += check_behavior_graph(behavior, fallback)

    sent, received, all_inputs = set(), set(), False
    for e in behavior.elements:
        if isinstance(e, SendAction):
            port = node.port(e.port)
            if port is None or port.direction is not Direction.OUT:
                why = "unknown port" if port is None else "an in port"
                out.append(diagnostic("E009", f"send '{e.name}' via '{e.port}': {why}", e.span, fallback))
            sent.add(e.port)
        elif isinstance(e, ReceiveEvent):
            if e.port is None:
                all_inputs = True
                continue
            port = node.port(e.port)
            if port is None or port.direction is not Direction.IN:
                why = "unknown port" if port is None else "an out port"
                out.append(diagnostic("E010", f"receive '{e.name}' from '{e.port}': {why}", e.span, fallback))
            received.add(e.port)

    if arch.level is Level.LLA:
        for p in node.ports:
            if p.direction is Direction.OUT and p.name not in sent:
                out.append(diagnostic("W102", f"out port '{node.name}.{p.name}' is never used by a send", p.span, fallback))
            if p.direction is Direction.IN and p.name not in received and not all_inputs:
                out.append(diagnostic("W103", f"in port '{node.name}.{p.name}' is never used by a receive", p.span, fallback))

    out += _check_formats(behavior, fallback)
    return out


def _check_formats(behavior: NodeBehavior, fallback) -> list[Diagnostic]:
    out = []
    for link in behavior.links:
        pred = behavior.element(link.source)
        succ = behavior.element(link.target)
        if not isinstance(succ, ProcessAction) or succ.from_format is None:
            continue
        produced = getattr(pred, "output_format", None)
        if produced is not None and produced != succ.from_format:
            out.append(
                diagnostic(
                    "W106",
                    f"process '{succ.name}' expects {succ.from_format} but '{pred.name}' produces {produced}",
                    succ.span,
                    fallback,
                )
            )
    return out


# -- connections --------------------------------------------------------------


def check_connections(arch: Architecture) -> list[Diagnostic]:
    """E004, E005, W104 and W105."""
    out = []
    fallback = arch.span
    for c in arch.connections:
        ends = []
        for end, role in ((c.source, "source"), (c.target, "target")):
            hit = resolve_endpoint(arch, end.node, end.port)
            if hit is None:
                what = "node" if arch.node(end.node) is None else "port"
                out.append(diagnostic("E004", f"connection {role} '{end}' does not resolve (unknown {what})", c.span, fallback))
            ends.append(hit)
        src, dst = ends
        bad = []
        if src is not None and src[1].direction is not Direction.OUT:
            bad.append(f"source '{c.source}' is an in port")
        if dst is not None and dst[1].direction is not Direction.IN:
            bad.append(f"target '{c.target}' is an out port")
        if bad:
            out.append(diagnostic("E005", "connection direction mismatch: " + "; ".join(bad), c.span, fallback))

    mentioned = set()
    outgoing, incoming = set(), set()
    for c in arch.connections:
        mentioned.update((c.source.node, c.target.node))
        outgoing.add((c.source.node, c.source.port))
        incoming.add((c.target.node, c.target.port))

    for node in arch.nodes:
        if len(arch.nodes) > 1 and node.name not in mentioned:
            out.append(diagnostic("W104", f"node '{node.name}' has no connections", node.span, fallback))
        for p in node.ports:
            key = (node.name, p.name)
            if p.direction is Direction.IN and key not in incoming:
                out.append(diagnostic("W105", f"in port '{node.name}.{p.name}' has no incoming connection", p.span, fallback))
            if p.direction is Direction.OUT and key not in outgoing:
                out.append(diagnostic("W105", f"out port '{node.name}.{p.name}' has no outgoing connection", p.span, fallback))
    return out


def validate(arch: Architecture) -> ValidationReport:
    diags = check_unique(arch.nodes, "E001", "node", arch.span)
    for node in arch.nodes:
        diags += _check_node(arch, node)
    diags += check_connections(arch)
    return ValidationReport(tuple(diags))


def integrity_check(arch: Architecture) -> list[Diagnostic]:
    """Errors only; an empty list means every model invariant holds."""
    return [d for d in validate(arch).diagnostics if d.is_error]

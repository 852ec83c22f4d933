"""Random model generators and brute-force oracles shared by the test modules."""

from __future__ import annotations

import random
from collections import deque
from pathlib import Path

from daml_kit.diagnostics import SourceSpan
from daml_kit.model import (
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

FIXTURES = Path(__file__).parent / "fixtures"

# keywords are deliberately included: names are contextual
NAME_POOL = [
    "a", "b", "Node", "x_1", "_p", "data-lake", "node", "from", "link", "json",
    "in", "out", "batch", "other", "kind", "to", "on", "send", "Z9", "a-b-c",
]
TEXT_POOL = [
    "", "plain", 'with "quotes"', "back\\slash", "multi\nline", "AWS S3",
    "ünïcødé ✓", "// not a comment", "/* nor this */", "{ } [ ] -> .", "\\\"",
]


def _name(rng: random.Random, used: set[str]) -> str:
    base = rng.choice(NAME_POOL)
    name = base
    i = 1
    while name in used:
        name = f"{base}_{i}"
        i += 1
    used.add(name)
    return name


def _opt(rng: random.Random, make, p: float = 0.5):
    return make() if rng.random() < p else None


def _format(rng: random.Random):
    if rng.random() < 0.1:
        return Other(rng.choice([t for t in TEXT_POOL if t]))
    return rng.choice(list(Format))


def _storage_kind(rng: random.Random):
    if rng.random() < 0.1:
        return Other(rng.choice([t for t in TEXT_POOL if t]))
    return rng.choice(list(StorageKind))


def _text(rng: random.Random) -> str:
    return rng.choice(TEXT_POOL)


def random_action(rng: random.Random, name: str):
    kind = rng.choice(["generate", "ingest", "process", "store", "analyze", "consume"])
    if kind == "generate":
        return GenerateAction(name, DataRepresentation(format=_format(rng)), _opt(rng, lambda: _text(rng)))
    if kind == "ingest":
        return IngestAction(name, rng.choice(list(IngestMode)))
    if kind == "process":
        ops = tuple(rng.choice(list(SubOperation)) for _ in range(rng.randint(0, 3)))
        return ProcessAction(
            name, rng.choice(list(Processing)), ops, _opt(rng, lambda: _format(rng)), _opt(rng, lambda: _format(rng))
        )
    if kind == "store":
        storage = Storage(_storage_kind(rng), _opt(rng, lambda: _text(rng)))
        rep = DataRepresentation(
            _opt(rng, lambda: _format(rng)), storage, _opt(rng, lambda: rng.choice(list(Location)))
        )
        return StoreAction(name, rep)
    if kind == "analyze":
        return AnalyzeAction(name, rng.choice(list(AnalysisKind)))
    return ConsumeAction(name, _opt(rng, lambda: _text(rng)))


def _valid_behavior(rng: random.Random, ins: list[str], outs: list[str]) -> NodeBehavior:
    used: set[str] = set()
    elements = []
    for _ in range(rng.randint(0, 2)):
        elements.append(ReceiveEvent(_name(rng, used), _opt(rng, lambda: rng.choice(ins)) if ins else None))
    for _ in range(rng.randint(0 if elements else 1, 4)):
        elements.append(random_action(rng, _name(rng, used)))
    for port in outs:
        if rng.random() < 0.8:
            elements.append(SendAction(_name(rng, used), port))
    # forward links only, never into an event: acyclic and E007-free
    links = []
    for j, target in enumerate(elements):
        if isinstance(target, ReceiveEvent) or j == 0:
            continue
        for i in rng.sample(range(j), k=min(j, rng.randint(0, 2))):
            links.append(Link(elements[i].name, target.name))
    rng.shuffle(links)
    return NodeBehavior(tuple(elements), tuple(links))


def random_architecture(rng: random.Random, level: Level | None = None, max_nodes: int = 6) -> Architecture:
    """A model with zero validation errors (warnings allowed)."""
    level = level or rng.choice(list(Level))
    used: set[str] = set()
    nodes = []
    for _ in range(rng.randint(0, max_nodes)):
        pnames: set[str] = set()
        ports = [Port(_name(rng, pnames), rng.choice(list(Direction))) for _ in range(rng.randint(0, 4))]
        ins = [p.name for p in ports if p.direction is Direction.IN]
        outs = [p.name for p in ports if p.direction is Direction.OUT]
        behavior = _valid_behavior(rng, ins, outs) if level is Level.LLA else None
        nodes.append(
            DataNode(
                _name(rng, used),
                _opt(rng, lambda: rng.choice(list(NodeKind))),
                _opt(rng, lambda: _text(rng), 0.3),
                tuple(ports),
                behavior,
            )
        )
    outs = [(n.name, p.name) for n in nodes for p in n.ports if p.direction is Direction.OUT]
    ins = [(n.name, p.name) for n in nodes for p in n.ports if p.direction is Direction.IN]
    connections = []
    if outs and ins:
        for _ in range(rng.randint(0, 2 * len(nodes))):
            s, t = rng.choice(outs), rng.choice(ins)
            connections.append(Connection(Endpoint(*s), Endpoint(*t), _opt(rng, lambda: _text(rng), 0.3)))
    return Architecture(_text(rng), level, tuple(nodes), tuple(connections))


def random_behavior(rng: random.Random, max_elements: int = 50) -> NodeBehavior:
    """Arbitrary behavior graph: cycles, self-links, dangling and event-targeting links."""
    n = rng.randint(1, max_elements)
    elements = []
    for j in range(n):
        name = f"e{j}"
        span = SourceSpan("<gen>", j + 1, 1, j + 1, 2)
        r = rng.random()
        if r < 0.15:
            elements.append(ReceiveEvent(name, span=span))
        elif r < 0.25:
            elements.append(GenerateAction(name, DataRepresentation(format=Format.JSON), span=span))
        else:
            elements.append(ProcessAction(name, Processing.BATCH, span=span))
    density = rng.choice([0.0, 0.5, 1.0, 1.5, 2.5])
    links = []
    for k in range(int(n * density) + rng.randint(0, 2)):
        src = f"e{rng.randrange(n)}"
        dst = f"e{rng.randrange(n)}" if rng.random() > 0.03 else "ghost"
        links.append(Link(src, dst, span=SourceSpan("<gen>", 1000 + k, 1, 1000 + k, 2)))
    return NodeBehavior(tuple(elements), tuple(links))


# -- oracles ------------------------------------------------------------------


def _adjacency(behavior: NodeBehavior):
    names = {e.name for e in behavior.elements}
    links = [l for l in behavior.links if l.source in names and l.target in names]
    adj = {e.name: set() for e in behavior.elements}
    for l in links:
        adj[l.source].add(l.target)
    return adj, links


def _reach(adj, start: str) -> set[str]:
    """Nodes reachable from ``start`` by a path of length >= 1."""
    seen: set[str] = set()
    queue = deque(adj[start])
    while queue:
        v = queue.popleft()
        if v not in seen:
            seen.add(v)
            queue.extend(adj[v])
    return seen


def oracle_cycles(behavior: NodeBehavior) -> set[frozenset[str]]:
    """Mutually-reachable classes of elements that lie on some cycle."""
    adj, _ = _adjacency(behavior)
    reach = {v: _reach(adj, v) for v in adj}
    classes = set()
    for u in adj:
        if u in reach[u]:
            classes.add(frozenset(v for v in adj if v in reach[u] and u in reach[v]))
    return classes


def oracle_e008_lines(behavior: NodeBehavior) -> set[int]:
    """Start line of the first in-class link of every cycle class."""
    _, links = _adjacency(behavior)
    lines = set()
    for cls in oracle_cycles(behavior):
        first = next(l for l in links if l.source in cls and l.target in cls)
        lines.add(first.span.start_line)
    return lines


def oracle_unreachable(behavior: NodeBehavior) -> set[str]:
    adj, links = _adjacency(behavior)
    indegree = {v: 0 for v in adj}
    for l in links:
        indegree[l.target] += 1
    roots = [
        e.name
        for e in behavior.elements
        if indegree[e.name] == 0 and isinstance(e, (ReceiveEvent, GenerateAction))
    ]
    seen = set(roots)
    for r in roots:
        seen |= _reach(adj, r)
    return set(adj) - seen


def oracle_sources(behavior: NodeBehavior) -> set[str]:
    counts = {e.name: 0 for e in behavior.elements}
    for l in behavior.links:
        if l.target in counts:
            counts[l.target] += 1
    return {n for n, c in counts.items() if c == 0}


# -- DOT structural check -----------------------------------------------------


def dot_structure(text: str):
    """Tokenize DOT enough to check braces, quoting and declared-before-use vertices.

    Returns ``(clusters, edges)`` where ``edges`` is a list of ``(tail, head, attrs)``.
    Raises ``AssertionError`` on malformed input.
    """
    depth = 0
    declared: set[str] = set()
    clusters = 0
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        # every quoted string must close on its line, with only valid escapes
        i, in_str, stripped = 0, False, []
        while i < len(line):
            c = line[i]
            if in_str:
                if c == "\\":
                    assert i + 1 < len(line) and line[i + 1] in '"\\n', f"bad escape in {raw!r}"
                    i += 2
                    continue
                if c == '"':
                    in_str = False
                i += 1
                continue
            if c == '"':
                in_str = True
                stripped.append('""')
            else:
                stripped.append(c)
            i += 1
        assert not in_str, f"unterminated string in {raw!r}"
        bare = "".join(stripped)
        depth += bare.count("{") - bare.count("}")
        assert depth >= 0, "unbalanced braces"
        if bare.startswith("subgraph cluster_"):
            clusters += 1
        head = bare.split("[", 1)[0].strip().rstrip(";")
        if "->" in head:
            tail, target = (s.strip() for s in head.split("->"))
            assert tail in declared and target in declared, f"undeclared endpoint in {raw!r}"
            attrs = bare.split("[", 1)[1] if "[" in bare else ""
            edges.append((tail, target, attrs))
        elif "[" in bare and head and not head.startswith(("node", "edge", "graph")):
            declared.add(head)
    assert depth == 0, "unbalanced braces"
    return clusters, edges


def check_lines(path: Path) -> list[str]:
    """Rendered parse + validation diagnostics for a fixture, labelled relative to ``FIXTURES``."""
    from daml_kit import parse, validate

    label = path.relative_to(FIXTURES).as_posix()
    result = parse(path.read_text(encoding="utf-8"), label)
    diags = list(result.diagnostics)
    if result.model is not None:
        diags += validate(result.model).diagnostics
    return [d.render() for d in diags]

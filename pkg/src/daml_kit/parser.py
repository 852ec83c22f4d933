"""Recursive-descent parser producing an :class:`Architecture` plus diagnostics.

Syntax errors are recovered at statement boundaries: the parser skips to the
next ``node`` or ``connect`` keyword and carries on, so one pass reports every
broken statement. Duplicate names are reported here too because the model
constructors refuse them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .diagnostics import MEMORY, Diagnostic, Severity, SourceSpan
from .lexer import Token, TokenKind, tokenize
from .model import (
    AnalysisKind,
    AnalyzeAction,
    Architecture,
    ConsumeAction,
    Connection,
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
from .validator import check_unique, diagnostic

_SYNC = {"node", "connect"}


@dataclass(frozen=True)
class ParseResult:
    model: Optional[Architecture]
    diagnostics: tuple[Diagnostic, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.model is not None


class _Abort(Exception):
    pass


class Parser:
    def __init__(self, tokens: list[Token], file: str = MEMORY):
        self.tokens = tokens
        self.file = file
        self.index = 0
        self.diagnostics: list[Diagnostic] = []

    # --- token utilities ---

    def _peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def _last(self) -> Token:
        return self.tokens[max(self.index - 1, 0)]

    def _advance(self) -> Token:
        tok = self._peek()
        if tok.kind is not TokenKind.EOF:
            self.index += 1
        return tok

    def _at_word(self, *words: str) -> bool:
        tok = self._peek()
        return tok.kind is TokenKind.KEYWORD and tok.text in words

    def _accept(self, word: str) -> Optional[Token]:
        if self._at_word(word):
            return self._advance()
        return None

    def _fail(self, expected: str, tok: Optional[Token] = None):
        tok = tok or self._peek()
        self.diagnostics.append(diagnostic("E014", f"expected {expected}, found {tok.describe()}", tok.span))
        raise _Abort

    def _expect(self, kind: TokenKind, expected: str | None = None) -> Token:
        if self._peek().kind is not kind:
            self._fail(expected or kind.value)
        return self._advance()

    def _expect_word(self, word: str) -> Token:
        if not self._at_word(word):
            self._fail(f"'{word}'")
        return self._advance()

    def _name(self, what: str) -> Token:
        # keywords are contextual, so any word is a valid name
        if not self._peek().is_word:
            self._fail(f"{what} name")
        return self._advance()

    def _string(self, what: str) -> Token:
        return self._expect(TokenKind.STRING, what)

    def _choice(self, enum_cls, what: str):
        tok = self._peek()
        options = [m.value for m in enum_cls]
        if tok.kind is TokenKind.KEYWORD and tok.text in options:
            self._advance()
            return enum_cls(tok.text)
        self._fail(f"{what} ({' | '.join(options)})")

    def _other_or(self, enum_cls, what: str):
        if self._at_word("other"):
            start = self._advance()
            self._expect(TokenKind.LPAREN)
            payload = self._string("other(...) payload")
            self._expect(TokenKind.RPAREN)
            if not payload.value:
                self.diagnostics.append(
                    diagnostic("E015", f"{what} other(...) payload must be non-empty", start.span.to(self._last().span))
                )
                raise _Abort
            return Other(payload.value)
        return self._choice(enum_cls, what)

    def _span_from(self, start: Token) -> SourceSpan:
        return start.span.to(self._last().span)

    def _recover(self) -> None:
        while self._peek().kind is not TokenKind.EOF and not self._at_word(*_SYNC):
            self._advance()

    # --- grammar ---

    def parse(self) -> Optional[Architecture]:
        try:
            start = self._expect_word("architecture")
            name = self._string("architecture name")
            self._expect(TokenKind.LBRACE)
            self._expect_word("level")
            level = self._choice(Level, "abstraction level")
        except _Abort:
            return None

        nodes: list[DataNode] = []
        connections: list[Connection] = []
        while True:
            tok = self._peek()
            if tok.kind is TokenKind.RBRACE:
                self._advance()
                break
            if tok.kind is TokenKind.EOF:
                if not self.diagnostics:
                    self._fail_soft("'}' closing the architecture", tok)
                break
            begin = self.index
            try:
                if self._at_word("node"):
                    if connections:
                        self._fail("'connect' (nodes must precede connections)")
                    nodes.append(self._node())
                elif self._at_word("connect"):
                    connections.append(self._connection())
                else:
                    self._fail("'node', 'connect' or '}'")
            except _Abort:
                if self.index == begin:
                    self._advance()
                self._recover()
        if not self.diagnostics and self._peek().kind is not TokenKind.EOF:
            self._fail_soft("end of file", self._peek())

        self.diagnostics += check_unique(nodes, "E001", "node")
        if any(d.severity is Severity.ERROR for d in self.diagnostics):
            return None
        return Architecture(name.value, level, tuple(nodes), tuple(connections), span=self._span_from(start))

    def _fail_soft(self, expected: str, tok: Token) -> None:
        try:
            self._fail(expected, tok)
        except _Abort:
            pass

    def _node(self) -> DataNode:
        start = self._expect_word("node")
        name = self._name("node")
        kind = None
        if self._accept("kind"):
            kind = self._choice(NodeKind, "node kind")
        self._expect(TokenKind.LBRACE)
        description = None
        if self._accept("description"):
            description = self._string("description").value
        ports = []
        while self._at_word("in", "out"):
            ports.append(self._port())
        behavior = None
        if self._at_word("behavior"):
            behavior = self._behavior()
        self._expect(TokenKind.RBRACE, "'}' closing the node")
        dups = check_unique(ports, "E002", "port")
        if dups:
            self.diagnostics += dups
            raise _Abort
        return DataNode(name.text, kind, description, tuple(ports), behavior, span=name.span)

    def _port(self) -> Port:
        start = self._advance()
        self._expect_word("port")
        name = self._name("port")
        return Port(name.text, Direction(start.text), span=self._span_from(start))

    def _behavior(self) -> NodeBehavior:
        start = self._expect_word("behavior")
        self._expect(TokenKind.LBRACE)
        elements = []
        while not self._at_word("link") and self._peek().kind is not TokenKind.RBRACE:
            elements.append(self._element())
        links = []
        while self._at_word("link"):
            link_start = self._advance()
            src = self._name("element")
            self._expect(TokenKind.ARROW)
            dst = self._name("element")
            links.append(Link(src.text, dst.text, span=self._span_from(link_start)))
        self._expect(TokenKind.RBRACE, "'}' closing the behavior")
        dups = check_unique(elements, "E003", "element")
        if dups:
            self.diagnostics += dups
            raise _Abort
        return NodeBehavior(tuple(elements), tuple(links), span=start.span)

    def _element(self):
        tok = self._peek()
        if tok.kind is not TokenKind.KEYWORD:
            self._fail("behavior element, 'link' or '}'")
        handler = getattr(self, f"_el_{tok.text}", None)
        if handler is None:
            self._fail("behavior element, 'link' or '}'")
        start = self._advance()
        return replace(handler(), span=self._span_from(start))

    def _el_on(self):
        self._expect_word("receive")
        name = self._name("event")
        port = None
        if self._accept("from"):
            port = self._name("port").text
        return ReceiveEvent(name.text, port)

    def _el_generate(self):
        name = self._name("action")
        self._expect(TokenKind.LBRACE)
        self._expect_word("format")
        fmt = self._other_or(Format, "data format")
        source = None
        if self._accept("source"):
            source = self._string("source").value
        self._expect(TokenKind.RBRACE)
        return GenerateAction(name.text, DataRepresentation(format=fmt), source)

    def _el_ingest(self):
        name = self._name("action")
        self._expect(TokenKind.LBRACE)
        self._expect_word("mode")
        mode = self._choice(IngestMode, "ingest mode")
        self._expect(TokenKind.RBRACE)
        return IngestAction(name.text, mode)

    def _el_process(self):
        name = self._name("action")
        self._expect(TokenKind.LBRACE)
        self._expect_word("type")
        processing = self._choice(Processing, "processing type")
        ops = []
        if self._accept("ops"):
            self._expect(TokenKind.LBRACKET)
            ops.append(self._choice(SubOperation, "sub-operation"))
            while self._peek().kind is TokenKind.COMMA:
                self._advance()
                ops.append(self._choice(SubOperation, "sub-operation"))
            self._expect(TokenKind.RBRACKET)
        from_fmt = to_fmt = None
        if self._accept("from"):
            from_fmt = self._other_or(Format, "data format")
        if self._accept("to"):
            to_fmt = self._other_or(Format, "data format")
        self._expect(TokenKind.RBRACE)
        return ProcessAction(name.text, processing, tuple(ops), from_fmt, to_fmt)

    def _el_store(self):
        name = self._name("action")
        self._expect(TokenKind.LBRACE)
        self._expect_word("tech")
        kind = self._other_or(StorageKind, "storage kind")
        technology = None
        if self._peek().kind is TokenKind.STRING:
            technology = self._advance().value
        fmt = location = None
        if self._accept("format"):
            fmt = self._other_or(Format, "data format")
        if self._accept("location"):
            location = self._choice(Location, "location")
        self._expect(TokenKind.RBRACE)
        return StoreAction(name.text, DataRepresentation(fmt, Storage(kind, technology), location))

    def _el_analyze(self):
        name = self._name("action")
        self._expect(TokenKind.LBRACE)
        self._expect_word("type")
        kind = self._choice(AnalysisKind, "analysis type")
        self._expect(TokenKind.RBRACE)
        return AnalyzeAction(name.text, kind)

    def _el_consume(self):
        name = self._name("action")
        self._expect(TokenKind.LBRACE)
        by = None
        if self._accept("by"):
            by = self._string("consumer").value
        self._expect(TokenKind.RBRACE)
        return ConsumeAction(name.text, by)

    def _el_send(self):
        name = self._name("action")
        self._expect_word("via")
        port = self._name("port")
        return SendAction(name.text, port.text)

    def _endpoint(self) -> Endpoint:
        node = self._name("node")
        self._expect(TokenKind.DOT)
        port = self._name("port")
        return Endpoint(node.text, port.text)

    def _connection(self) -> Connection:
        start = self._expect_word("connect")
        src = self._endpoint()
        self._expect(TokenKind.ARROW)
        dst = self._endpoint()
        label = None
        if self._accept("label"):
            label = self._string("label").value
        return Connection(src, dst, label, span=self._span_from(start))


def parse(text: str, file: str = MEMORY) -> ParseResult:
    tokens, lex_errors = tokenize(text, file)
    parser = Parser(tokens, file)
    model = parser.parse()
    diags = sorted(lex_errors + parser.diagnostics, key=Diagnostic.sort_key)
    if lex_errors:
        model = None
    return ParseResult(model, tuple(diags))

"""Tokenizer for the textual modeling language."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .diagnostics import MEMORY, Diagnostic, Severity, SourceSpan


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    STRING = "string"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LBRACKET = "'['"
    RBRACKET = "']'"
    LPAREN = "'('"
    RPAREN = "')'"
    COMMA = "','"
    DOT = "'.'"
    ARROW = "'->'"
    EOF = "end of file"


KEYWORDS = frozenset(
    """
    architecture level HLA LLA node kind description in out port behavior on receive from
    generate format source ingest mode process type ops to store tech location analyze
    consume by send via link connect label other
    stream batch realtime hybrid
    descriptive diagnostic predictive prescriptive
    ingestion processing storage analysis consumer generic
    json xml csv text video image audio avro column-oriented relational key-value document
    graph time-series binary
    filesystem relational-db column-db document-db key-value-db graph-db time-series-db
    object-store message-queue
    cloud edge on-premise
    clean filter transform classify reduce validate aggregate join enrich
    """.split()
)

_PUNCT = {
    "{": TokenKind.LBRACE,
    "}": TokenKind.RBRACE,
    "[": TokenKind.LBRACKET,
    "]": TokenKind.RBRACKET,
    "(": TokenKind.LPAREN,
    ")": TokenKind.RPAREN,
    ",": TokenKind.COMMA,
    ".": TokenKind.DOT,
}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan
    value: str = ""

    @property
    def is_word(self) -> bool:
        return self.kind in (TokenKind.KEYWORD, TokenKind.IDENT)

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of file"
        if self.kind is TokenKind.STRING:
            return "string"
        return f"'{self.text}'"


def _ident_start(c: str) -> bool:
    return len(c) == 1 and c.isascii() and (c.isalpha() or c == "_")


def _ident_char(c: str) -> bool:
    return len(c) == 1 and c.isascii() and (c.isalnum() or c in "_-")


class Lexer:
    def __init__(self, text: str, file: str = MEMORY):
        self.text = text
        self.file = file
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens: list[Token] = []
        self.diagnostics: list[Diagnostic] = []

    def _peek(self, ahead: int = 0) -> str:
        i = self.pos + ahead
        return self.text[i] if i < len(self.text) else ""

    def _advance(self) -> str:
        c = self.text[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def _error(self, message: str, start: tuple[int, int]) -> None:
        span = SourceSpan(self.file, start[0], start[1], self.line, self.col)
        self.diagnostics.append(Diagnostic(Severity.ERROR, "E013", message, span))

    def _emit(self, kind: TokenKind, start: tuple[int, int], begin: int, value: str = "") -> None:
        span = SourceSpan(self.file, start[0], start[1], self.line, self.col)
        self.tokens.append(Token(kind, self.text[begin : self.pos], span, value))

    def tokenize(self) -> list[Token]:
        while self.pos < len(self.text):
            c = self._peek()
            start = (self.line, self.col)
            begin = self.pos
            if c in " \t\r\n﻿":
                self._advance()
            elif c == "/" and self._peek(1) == "/":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            elif c == "/" and self._peek(1) == "*":
                self._advance()
                self._advance()
                while self.pos < len(self.text) and not (self._peek() == "*" and self._peek(1) == "/"):
                    self._advance()
                if self.pos >= len(self.text):
                    self._error("unterminated block comment", start)
                else:
                    self._advance()
                    self._advance()
            elif c == '"':
                self._string(start, begin)
            elif c == "-" and self._peek(1) == ">":
                self._advance()
                self._advance()
                self._emit(TokenKind.ARROW, start, begin)
            elif c in _PUNCT:
                self._advance()
                self._emit(_PUNCT[c], start, begin)
            elif _ident_start(c):
                self._advance()
                # "a->b" must split before the arrow
                while _ident_char(self._peek()) and not (self._peek() == "-" and self._peek(1) == ">"):
                    self._advance()
                word = self.text[begin : self.pos]
                kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT
                self._emit(kind, start, begin, word)
            else:
                self._advance()
                self._error(f"unexpected character {c!r}", start)
        here = (self.line, self.col)
        self.tokens.append(Token(TokenKind.EOF, "", SourceSpan(self.file, *here, *here)))
        return self.tokens

    def _string(self, start, begin) -> None:
        self._advance()
        chars = []
        while True:
            if self.pos >= len(self.text):
                self._error("unterminated string", start)
                return
            c = self._advance()
            if c == '"':
                break
            if c == "\\":
                nxt = self._peek()
                if nxt in ('"', "\\"):
                    chars.append(self._advance())
                    continue
                esc_start = (self.line, self.col - 1)
                if nxt:
                    self._advance()
                self._error(f"invalid escape sequence '\\{nxt}'", esc_start)
                continue
            chars.append(c)
        self._emit(TokenKind.STRING, start, begin, "".join(chars))


def tokenize(text: str, file: str = MEMORY) -> tuple[list[Token], list[Diagnostic]]:
    """Tokens (ending with EOF) and any lexical error diagnostics."""
    lexer = Lexer(text, file)
    tokens = lexer.tokenize()
    return tokens, lexer.diagnostics

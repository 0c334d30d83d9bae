"""Lexer, syntax tree and recursive-descent parser for FDL sources.

Grammar (see docs/fdl.md for the full EBNF)::

    document := block*
    block    := KIND NAME "{" field* "}"
    field    := KEY "=" value
    value    := NUMBER | STRING | IDENT | "[" [value ("," value)* [","]] "]"

``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from ..numfmt import render

KINDS = ("range", "crisp", "shape", "fuzzy", "world", "event")

# fields whose numbers must be degrees, checked at parse time
_DEGREE_FIELDS = {("shape", "anchors"), ("shape", "apex"), ("fuzzy", "entries")}


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    column: int
    code: str
    message: str

    def format(self, filename: str = "<input>") -> str:
        return f"{filename}:{self.line}:{self.column}: {self.code} {self.message}"


class FDLError(Exception):
    """Raised when a source cannot be parsed or loaded; carries all diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(first.format() if first else "invalid FDL document")


# --- syntax tree ------------------------------------------------------------

@dataclass(frozen=True)
class Number:
    value: float
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Word:
    text: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Text:
    text: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ListValue:
    items: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Field:
    key: str
    value: object
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Block:
    kind: str
    name: str
    fields: tuple[Field, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)
    name_line: int = field(default=0, compare=False)
    name_col: int = field(default=0, compare=False)

    def get(self, key: str) -> Field | None:
        for f in self.fields:
            if f.key == key:
                return f
        return None

    def sort_key(self):
        rank = KINDS.index(self.kind) if self.kind in KINDS else len(KINDS)
        return rank, self.kind, self.name


@dataclass(frozen=True, eq=False)
class Document:
    """Parsed FDL source.

    Equality is structural: declaration order, field order and source
    positions are ignored.
    """

    blocks: tuple[Block, ...]

    def canonical(self):
        return tuple(sorted(((b.sort_key(), tuple(sorted(b.fields, key=lambda f: f.key)))
                             for b in self.blocks), key=lambda t: t[0]))

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def of_kind(self, kind: str) -> list[Block]:
        return [b for b in self.blocks if b.kind == kind]

    def get(self, kind: str, name: str) -> Block | None:
        for b in self.blocks:
            if b.kind == kind and b.name == name:
                return b
        return None


# --- lexer --------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # IDENT NUMBER STRING PUNCT EOF
    text: str
    line: int
    col: int


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")
_NUMBER = re.compile(r"-?[0-9]+(?:\.[0-9]+)?")
_SCI_TAIL = re.compile(r"[eE][+-]?[0-9]+")
_NUMBERISH = re.compile(r"[-0-9.]+[A-Za-z0-9_.+\-]*")
_PUNCT = "{}[],="


class _Lexer:
    def __init__(self, source: str, diags: list):
        self.src = source
        self.diags = diags

    def _error(self, line, col, code, msg):
        self.diags.append(Diagnostic("error", line, col, code, msg))

    def tokens(self) -> Iterator[Token]:
        src = self.src
        for lineno, text in enumerate(src.split("\n"), start=1):
            i = 0
            n = len(text)
            while i < n:
                c = text[i]
                col = i + 1
                if c in " \t\r":
                    i += 1
                elif c == "#":
                    break
                elif c in _PUNCT:
                    yield Token("PUNCT", c, lineno, col)
                    i += 1
                elif c == '"':
                    j = i + 1
                    buf = []
                    while j < n and text[j] != '"':
                        if text[j] == "\\" and j + 1 < n and text[j + 1] in '"\\':
                            j += 1
                        buf.append(text[j])
                        j += 1
                    if j >= n:
                        self._error(lineno, col, "UNTERMINATED_STRING", "string literal is not closed on this line")
                        # keep parsing as if the string ran to the end of the line
                        yield Token("STRING", "".join(buf), lineno, col)
                        break
                    yield Token("STRING", "".join(buf), lineno, col)
                    i = j + 1
                elif c.isdigit() or c == "-":
                    m = _NUMBER.match(text, i)
                    end = m.end() if m else i
                    tail = text[end:end + 1]
                    if m and _SCI_TAIL.match(text, end):
                        s = _SCI_TAIL.match(text, end)
                        self._error(lineno, col, "SCI_NOTATION",
                                    f"scientific notation {text[i:s.end()]!r} is not allowed; "
                                    "write the number in plain decimal form")
                        yield Token("NUMBER", "0", lineno, col)
                        i = s.end()
                    elif not m or (tail and (tail.isalnum() or tail in "._")):
                        bad = _NUMBERISH.match(text, i)
                        stop = bad.end() if bad else i + 1
                        self._error(lineno, col, "BAD_NUMBER", f"malformed number {text[i:stop]!r}")
                        yield Token("NUMBER", "0", lineno, col)
                        i = stop
                    else:
                        yield Token("NUMBER", m.group(), lineno, col)
                        i = end
                elif c.isalpha() or c == "_":
                    m = _IDENT.match(text, i)
                    yield Token("IDENT", m.group(), lineno, col)
                    i = m.end()
                else:
                    self._error(lineno, col, "UNEXPECTED_CHAR", f"unexpected character {c!r}")
                    i += 1
        last = src.split("\n")
        yield Token("EOF", "", len(last), len(last[-1]) + 1)


# --- parser -------------------------------------------------------------------

class _Recover(Exception):
    pass


class _Parser:
    def __init__(self, source: str):
        self.diags: list[Diagnostic] = []
        self.toks = list(_Lexer(source, self.diags).tokens())
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.pos += 1
        return t

    def error(self, tok, code, msg):
        self.diags.append(Diagnostic("error", tok.line, tok.col, code, msg))

    def expect_punct(self, ch, what):
        t = self.tok
        if t.kind == "PUNCT" and t.text == ch:
            return self.advance()
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        self.error(t, "EXPECTED", f"expected {ch!r} {what}, found {found}")
        raise _Recover

    def is_punct(self, ch):
        return self.tok.kind == "PUNCT" and self.tok.text == ch

    def starts_block(self):
        return (self.tok.kind == "IDENT" and self.peek().kind == "IDENT"
                and self.peek(2).kind == "PUNCT" and self.peek(2).text == "{")

    def skip_block(self):
        while self.tok.kind != "EOF":
            if self.is_punct("}"):
                self.advance()
                return
            if self.starts_block():
                return
            self.advance()

    def document(self) -> Document:
        blocks = []
        names = {}
        while self.tok.kind != "EOF":
            try:
                b = self.block()
            except _Recover:
                self.skip_block()
                continue
            if b is None:
                continue
            key = (b.kind, b.name)
            if key in names:
                self.diags.append(Diagnostic("error", b.name_line, b.name_col, "DUPLICATE_NAME",
                                             f"{b.kind} {b.name!r} already declared on line {names[key]}"))
            else:
                names[key] = b.line
                blocks.append(b)
        return Document(tuple(blocks))

    def block(self) -> Block | None:
        t = self.tok
        if t.kind != "IDENT":
            self.error(t, "EXPECTED", f"expected a declaration kind ({', '.join(KINDS)}), found {t.text!r}")
            raise _Recover
        kind = self.advance()
        if kind.text not in KINDS:
            self.error(kind, "UNKNOWN_KIND", f"unknown declaration kind {kind.text!r}")
        name = self.tok
        if name.kind != "IDENT":
            self.error(name, "EXPECTED", f"expected a name after {kind.text!r}")
            raise _Recover
        self.advance()
        opener = self.expect_punct("{", f"to open {kind.text} {name.text!r}")
        fields = []
        keys = set()
        while True:
            t = self.tok
            if t.kind == "EOF" or self.starts_block():
                self.error(opener, "UNTERMINATED_BLOCK",
                           f"{kind.text} {name.text!r} is never closed with '}}'")
                break
            if self.is_punct("}"):
                self.advance()
                break
            try:
                f = self.field()
            except _Recover:
                self.skip_field()
                continue
            if f.key in keys:
                self.error(Token("IDENT", f.key, f.line, f.col), "DUPLICATE_KEY",
                           f"field {f.key!r} given twice in {kind.text} {name.text!r}")
            keys.add(f.key)
            fields.append(f)
        b = Block(kind.text, name.text, tuple(fields), kind.line, kind.col, name.line, name.col)
        if kind.text not in KINDS:
            return None
        self.check_degrees(b)
        return b

    def skip_field(self):
        # resume at the next line that can start a field or close the block
        line = self.toks[self.pos - 1].line if self.pos else 0
        while self.tok.kind != "EOF":
            if self.is_punct("}") or self.starts_block():
                return
            if self.tok.line > line and self.tok.kind == "IDENT" and \
                    self.peek().kind == "PUNCT" and self.peek().text == "=":
                return
            self.advance()

    def field(self) -> Field:
        t = self.tok
        if t.kind != "IDENT":
            found = t.text if t.kind != "STRING" else f'"{t.text}"'
            self.error(t, "EXPECTED", f"expected a field name, found {found!r}")
            raise _Recover
        self.advance()
        self.expect_punct("=", f"after field name {t.text!r}")
        return Field(t.text, self.value(), t.line, t.col)

    def value(self):
        t = self.tok
        if t.kind == "NUMBER":
            self.advance()
            return Number(float(t.text), t.line, t.col)
        if t.kind == "STRING":
            self.advance()
            return Text(t.text, t.line, t.col)
        if t.kind == "IDENT":
            self.advance()
            return Word(t.text, t.line, t.col)
        if self.is_punct("["):
            self.advance()
            items = []
            while not self.is_punct("]"):
                items.append(self.value())
                if self.is_punct(","):
                    self.advance()
                elif not self.is_punct("]"):
                    found = "end of input" if self.tok.kind == "EOF" else repr(self.tok.text)
                    self.error(self.tok, "EXPECTED", f"expected ',' or ']' in list, found {found}")
                    raise _Recover
            self.advance()
            return ListValue(tuple(items), t.line, t.col)
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        self.error(t, "EXPECTED", f"expected a value, found {found}")
        raise _Recover

    # degree-range rule -----------------------------------------------------

    def _degree(self, node, what):
        if isinstance(node, Number) and not 0.0 <= node.value <= 1.0:
            self.diags.append(Diagnostic("error", node.line, node.col, "DEGREE_RANGE",
                                         f"{what} {render(node.value)} outside [0, 1]"))

    def check_degrees(self, b: Block):
        for f in b.fields:
            if (b.kind, f.key) not in _DEGREE_FIELDS:
                continue
            v = f.value
            if f.key == "apex":
                self._degree(v, "apex")
            elif f.key == "anchors" and isinstance(v, ListValue):
                for item in v.items:
                    if isinstance(item, ListValue) and len(item.items) == 2:
                        self._degree(item.items[1], "anchor degree")
            elif f.key == "entries" and isinstance(v, ListValue):
                for item in v.items:
                    if isinstance(item, ListValue) and len(item.items) == 3:
                        path, top = item.items[1], item.items[2]
                        if isinstance(path, ListValue):
                            for d in path.items:
                                self._degree(d, "path degree")
                        self._degree(top, "degree")


def parse(source: str) -> Document:
    """Parse FDL text.

    Raises :class:`FDLError` listing every diagnostic when the source has
    errors; no partial document is returned.
    """
    p = _Parser(source)
    doc = p.document()
    errors = [d for d in p.diags if d.severity == "error"]
    if errors:
        raise FDLError(sorted(p.diags, key=lambda d: (d.line, d.column)))
    return doc

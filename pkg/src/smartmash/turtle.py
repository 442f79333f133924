"""Turtle reader/writer for the subset service ontologies are written in.

Supported syntax: ``@prefix`` declarations, prefixed names, absolute IRIs in
angle brackets, ``a`` for rdf:type, ``;`` predicate lists, ``,`` object
lists, anonymous blank nodes ``[ ... ]``, labeled blank nodes ``_:name``,
string literals with ``@lang`` or ``^^`` datatype, bare decimal and boolean
literals, and ``#`` comments. Anything else is a ParseError carrying the
exact 1-based line/column of the first offending character.

Serialization is deterministic: subjects sorted by term, predicates sorted
within a subject, objects sorted within a predicate. Parsing a serialization
reproduces the original graph up to blank-node renaming.
"""

from __future__ import annotations

import re

from . import vocab as V
from .errors import ParseError
from .graph import Graph
from .terms import BOOLEAN, DECIMAL, STRING, BlankNode, Iri, Literal, Term, Triple, term_key

_NUMBER_RE = re.compile(r"[+-]?(?:[0-9]+\.[0-9]+|\.[0-9]+|[0-9]+)")
_BARE_DECIMAL_RE = re.compile(r"^[+-]?(?:[0-9]+\.[0-9]+|\.[0-9]+|[0-9]+)$")
_LANGTAG_RE = re.compile(r"[a-zA-Z]+(?:-[a-zA-Z0-9]+)*")
_PN_LOCAL_SAFE = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")

_DATATYPE_MAP = {
    V.XSD_STRING.value: STRING,
    V.XSD_DECIMAL.value: DECIMAL,
    V.XSD_BOOLEAN.value: BOOLEAN,
}


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _is_name_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_name_char(c: str) -> bool:
    return c.isalnum() or c in "_-"


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.i = 0
        self.line = 1
        self.col = 1

    def error(self, message: str, line=None, col=None):
        raise ParseError(message, line or self.line, col or self.col)

    def _advance(self, n: int = 1):
        for _ in range(n):
            if self.i < len(self.text):
                if self.text[self.i] == "\n":
                    self.line += 1
                    self.col = 1
                else:
                    self.col += 1
                self.i += 1

    def _peek(self, offset: int = 0) -> str:
        j = self.i + offset
        return self.text[j] if j < len(self.text) else ""

    def tokens(self) -> list[_Token]:
        out = []
        while True:
            tok = self._next()
            out.append(tok)
            if tok.kind == "eof":
                return out

    def _next(self) -> _Token:
        text = self.text
        while self.i < len(text):
            c = text[self.i]
            if c.isspace():
                self._advance()
            elif c == "#":
                while self.i < len(text) and text[self.i] != "\n":
                    self._advance()
            else:
                break
        line, col = self.line, self.col
        if self.i >= len(text):
            return _Token("eof", "", line, max(col, 1))
        c = text[self.i]
        if c == "." and not self._peek(1).isdigit():
            self._advance()
            return _Token(c, c, line, col)
        if c in ";,[]":
            self._advance()
            return _Token(c, c, line, col)
        if c == "^" and self._peek(1) == "^":
            self._advance(2)
            return _Token("^^", "^^", line, col)
        if c == "<":
            return self._iri(line, col)
        if c == '"':
            return self._string(line, col)
        if c == "@":
            self._advance()
            m = _LANGTAG_RE.match(text, self.i)
            if not m:
                self.error("expected a directive or language tag after '@'",
                           line, col)
            word = m.group(0)
            self._advance(len(word))
            if word == "prefix":
                return _Token("@prefix", word, line, col)
            return _Token("langtag", word, line, col)
        if c == "_" and self._peek(1) == ":":
            self._advance(2)
            start = self.i
            while self.i < len(text) and _is_name_char(text[self.i]):
                self._advance()
            if self.i == start:
                self.error("blank node label expected after '_:'", line, col)
            return _Token("blank", text[start:self.i], line, col)
        m = _NUMBER_RE.match(text, self.i)
        if m and (c.isdigit() or c in "+-." ):
            lexeme = m.group(0)
            self._advance(len(lexeme))
            return _Token("number", lexeme, line, col)
        if _is_name_start(c) or c == ":":
            return self._name(line, col)
        self.error(f"unexpected character {c!r}", line, col)

    def _iri(self, line, col) -> _Token:
        self._advance()  # consume '<'
        start = self.i
        text = self.text
        while self.i < len(text) and text[self.i] != ">":
            ch = text[self.i]
            if ch.isspace():
                self.error("whitespace inside IRI", self.line, self.col)
            self._advance()
        if self.i >= len(text):
            self.error("unterminated IRI", line, col)
        value = text[start:self.i]
        self._advance()  # consume '>'
        if not value:
            self.error("empty IRI", line, col)
        return _Token("iri", value, line, col)

    def _string(self, line, col) -> _Token:
        self._advance()  # consume opening quote
        text = self.text
        chars = []
        while True:
            if self.i >= len(text):
                self.error("unterminated string literal", line, col)
            ch = text[self.i]
            if ch == '"':
                self._advance()
                return _Token("string", "".join(chars), line, col)
            if ch == "\n":
                self.error("newline inside string literal", self.line, self.col)
            if ch == "\\":
                eline, ecol = self.line, self.col
                self._advance()
                esc = self._peek()
                if esc in '"\\':
                    chars.append(esc)
                    self._advance()
                elif esc in "ntr":
                    chars.append({"n": "\n", "t": "\t", "r": "\r"}[esc])
                    self._advance()
                elif esc == "u":
                    self._advance()
                    hex4 = text[self.i:self.i + 4]
                    if len(hex4) < 4 or any(h not in "0123456789abcdefABCDEF"
                                            for h in hex4):
                        self.error("bad \\u escape", eline, ecol)
                    chars.append(chr(int(hex4, 16)))
                    self._advance(4)
                else:
                    self.error(f"unknown escape \\{esc}", eline, ecol)
            else:
                chars.append(ch)
                self._advance()

    def _name(self, line, col) -> _Token:
        text = self.text
        start = self.i
        while self.i < len(text) and _is_name_char(text[self.i]):
            self._advance()
        prefix = text[start:self.i]
        if self.i < len(text) and text[self.i] == ":":
            self._advance()
            lstart = self.i
            while self.i < len(text):
                ch = text[self.i]
                if _is_name_char(ch):
                    self._advance()
                elif ch == "." and self.i + 1 < len(text) \
                        and _is_name_char(text[self.i + 1]):
                    self._advance()  # dots allowed inside local names only
                else:
                    break
            return _Token("pname", (prefix, text[lstart:self.i]), line, col)
        if prefix == "a":
            return _Token("a", prefix, line, col)
        if prefix in ("true", "false"):
            return _Token("boolean", prefix, line, col)
        self.error(f"unexpected bare word {prefix!r}", line, col)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _Lexer(text).tokens()
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        self.graph = Graph()
        self.blank_labels: dict[str, BlankNode] = {}

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _take(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def _expect(self, kind: str) -> _Token:
        tok = self._peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}",
                             tok.line, tok.col)
        return self._take()

    def parse(self) -> Graph:
        while True:
            tok = self._peek()
            if tok.kind == "eof":
                return self.graph
            if tok.kind == "@prefix":
                self._prefix_decl()
            else:
                self._statement()

    def _prefix_decl(self):
        self._take()
        tok = self._expect("pname")
        prefix, local = tok.value
        if local:
            raise ParseError("prefix declaration must end with ':'",
                             tok.line, tok.col)
        iri_tok = self._expect("iri")
        self.prefixes[prefix] = iri_tok.value
        self._expect(".")

    def _statement(self):
        subject = self._subject()
        self._predicate_object_list(subject)
        self._expect(".")

    def _subject(self) -> Term:
        tok = self._peek()
        if tok.kind in ("iri", "pname"):
            return self._iri_term()
        if tok.kind == "blank":
            self._take()
            return self._blank_label(tok.value)
        if tok.kind == "[":
            return self._blank_node()
        raise ParseError(f"expected a subject, found {tok.kind!r}",
                         tok.line, tok.col)

    def _iri_term(self) -> Iri:
        tok = self._take()
        if tok.kind == "iri":
            return Iri(tok.value)
        prefix, local = tok.value
        if prefix not in self.prefixes:
            raise ParseError(f"unknown prefix {prefix + ':'!r}",
                             tok.line, tok.col)
        return Iri(self.prefixes[prefix] + local)

    def _blank_label(self, label: str) -> BlankNode:
        node = self.blank_labels.get(label)
        if node is None:
            node = self.graph.new_blank()
            self.blank_labels[label] = node
        return node

    def _blank_node(self) -> BlankNode:
        self._expect("[")
        node = self.graph.new_blank()
        if self._peek().kind != "]":
            self._predicate_object_list(node)
        self._expect("]")
        return node

    def _predicate_object_list(self, subject: Term):
        while True:
            self._verb_objects(subject)
            if self._peek().kind == ";":
                self._take()
                while self._peek().kind == ";":
                    self._take()
                if self._peek().kind in (".", "]"):
                    return
                continue
            return

    def _verb_objects(self, subject: Term):
        tok = self._peek()
        if tok.kind == "a":
            self._take()
            predicate = V.TYPE
        elif tok.kind in ("iri", "pname"):
            predicate = self._iri_term()
        else:
            raise ParseError(f"expected a predicate, found {tok.kind!r}",
                             tok.line, tok.col)
        while True:
            obj = self._object()
            self.graph.add(Triple(subject, predicate, obj))
            if self._peek().kind == ",":
                self._take()
                continue
            return

    def _object(self) -> Term:
        tok = self._peek()
        if tok.kind in ("iri", "pname"):
            return self._iri_term()
        if tok.kind == "blank":
            self._take()
            return self._blank_label(tok.value)
        if tok.kind == "[":
            return self._blank_node()
        if tok.kind == "number":
            self._take()
            return Literal(tok.value, DECIMAL)
        if tok.kind == "boolean":
            self._take()
            return Literal(tok.value, BOOLEAN)
        if tok.kind == "string":
            return self._literal()
        raise ParseError(f"expected an object, found {tok.kind!r}",
                         tok.line, tok.col)

    def _literal(self) -> Literal:
        tok = self._take()
        lexical = tok.value
        nxt = self._peek()
        if nxt.kind == "langtag":
            self._take()
            return Literal(lexical, STRING, nxt.value)
        if nxt.kind == "^^":
            self._take()
            dt_tok = self._peek()
            dt = self._iri_term()
            datatype = _DATATYPE_MAP.get(dt.value)
            if datatype is None:
                raise ParseError(f"unsupported literal datatype <{dt.value}>",
                                 dt_tok.line, dt_tok.col)
            try:
                return Literal(lexical, datatype)
            except ValueError as exc:
                raise ParseError(str(exc), tok.line, tok.col)
        return Literal(lexical, STRING)


def parse_document(text: str) -> Graph:
    """Parse a Turtle document into a fresh graph."""
    return _Parser(text).parse()


# -- serialization ---------------------------------------------------------

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape(s: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in s)


def _render_iri(iri: Iri) -> str:
    for prefix, ns in V.PREFIXES.items():
        if iri.value.startswith(ns):
            local = iri.value[len(ns):]
            if local == "" or _PN_LOCAL_SAFE.match(local):
                return f"{prefix}:{local}"
    return f"<{iri.value}>"


def _render_term(t: Term) -> str:
    if isinstance(t, Iri):
        if t == V.TYPE:
            return "a"
        return _render_iri(t)
    if isinstance(t, BlankNode):
        return f"_:{t.id}"
    if t.datatype == DECIMAL:
        if _BARE_DECIMAL_RE.match(t.lexical):
            return t.lexical
        return f'"{_escape(t.lexical)}"^^xsd:decimal'
    if t.datatype == BOOLEAN:
        return t.lexical
    if t.lang_tag:
        return f'"{_escape(t.lexical)}"@{t.lang_tag}'
    return f'"{_escape(t.lexical)}"'


def serialize(graph: Graph) -> str:
    lines = [f"@prefix {p}: <{ns}> ." for p, ns in V.PREFIXES.items()]
    lines.append("")
    by_subject: dict[Term, dict[Iri, list[Term]]] = {}
    for t in graph:
        by_subject.setdefault(t.s, {}).setdefault(t.p, []).append(t.o)
    for subject in sorted(by_subject, key=term_key):
        preds = by_subject[subject]
        parts = []
        for p in sorted(preds, key=term_key):
            objs = ", ".join(_render_term(o)
                             for o in sorted(preds[p], key=term_key))
            parts.append(f"{_render_term(p)} {objs}")
        body = " ;\n    ".join(parts)
        lines.append(f"{_render_term(subject)} {body} .")
    return "\n".join(lines) + "\n"

"""RDF-style terms: IRIs, blank nodes, typed literals, triples.

Literals carry one of three datatypes (string, decimal, boolean); a language
tag is only legal on strings. Terms are immutable with cached hashes, since
they live in set-based graph indexes and saturation hashes them heavily.
"""

from __future__ import annotations

import re
from decimal import Decimal
from typing import Union

STRING = "string"
DECIMAL = "decimal"
BOOLEAN = "boolean"
DATATYPES = (STRING, DECIMAL, BOOLEAN)

_DECIMAL_RE = re.compile(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$")


class Iri:
    __slots__ = ("value", "_hash")

    def __init__(self, value: str):
        if not value or any(c.isspace() for c in value):
            raise ValueError(f"not a usable IRI: {value!r}")
        self.value = value
        self._hash = hash(("iri", value))

    @property
    def local_name(self) -> str:
        v = self.value
        for sep in ("#", "/", ":"):
            if sep in v:
                return v.rsplit(sep, 1)[1] or v
        return v

    def __eq__(self, other):
        return isinstance(other, Iri) and other.value == self.value

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{self.value}>"


class BlankNode:
    __slots__ = ("id", "_hash")

    def __init__(self, id: str):
        self.id = id
        self._hash = hash(("blank", id))

    def __eq__(self, other):
        return isinstance(other, BlankNode) and other.id == self.id

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"_:{self.id}"


class Literal:
    __slots__ = ("lexical", "datatype", "lang_tag", "_hash")

    def __init__(self, lexical: str, datatype: str = STRING,
                 lang_tag: str | None = None):
        if datatype not in DATATYPES:
            raise ValueError(f"unsupported datatype: {datatype!r}")
        if lang_tag is not None and datatype != STRING:
            raise ValueError("language tags are only valid on string literals")
        if datatype == DECIMAL and not _DECIMAL_RE.match(lexical):
            raise ValueError(f"not a decimal lexical form: {lexical!r}")
        if datatype == BOOLEAN and lexical not in ("true", "false"):
            raise ValueError(f"not a boolean lexical form: {lexical!r}")
        self.lexical = lexical
        self.datatype = datatype
        self.lang_tag = lang_tag
        self._hash = hash(("lit", lexical, datatype, lang_tag))

    def as_decimal(self) -> Decimal:
        return Decimal(self.lexical)

    def __eq__(self, other):
        return isinstance(other, Literal) and other.lexical == self.lexical \
            and other.datatype == self.datatype \
            and other.lang_tag == self.lang_tag

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.lang_tag:
            return f'"{self.lexical}"@{self.lang_tag}'
        if self.datatype == STRING:
            return f'"{self.lexical}"'
        return f'"{self.lexical}"^^{self.datatype}'


Term = Union[Iri, BlankNode, Literal]


def string(lexical: str, lang: str | None = None) -> Literal:
    return Literal(lexical, STRING, lang)


def decimal(lexical) -> Literal:
    return Literal(str(lexical), DECIMAL)


def boolean(value) -> Literal:
    if isinstance(value, bool):
        value = "true" if value else "false"
    return Literal(value, BOOLEAN)


def term_key(t: Term):
    """Total deterministic order over mixed terms, for sorting."""
    if isinstance(t, Iri):
        return (0, t.value, "", "")
    if isinstance(t, BlankNode):
        return (1, t.id, "", "")
    return (2, t.lexical, t.datatype, t.lang_tag or "")


class Triple:
    __slots__ = ("s", "p", "o", "_hash")

    def __init__(self, s: Term, p: Iri, o: Term):
        if isinstance(s, Literal):
            raise ValueError("a literal cannot be the subject of a triple")
        if not isinstance(p, Iri):
            raise ValueError("the predicate of a triple must be an IRI")
        self.s = s
        self.p = p
        self.o = o
        self._hash = hash((s, p, o))

    def key(self):
        return (term_key(self.s), term_key(self.p), term_key(self.o))

    def __eq__(self, other):
        return isinstance(other, Triple) and other.s == self.s \
            and other.p == self.p and other.o == self.o

    def __hash__(self):
        return self._hash

    def __iter__(self):
        return iter((self.s, self.p, self.o))

    def __repr__(self):
        return f"({self.s!r} {self.p!r} {self.o!r})"

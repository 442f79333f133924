"""Keyword query parsing: sentences of the form

    find {[<class>] <predicate>} this <class>

Label phrases are resolved longest-window-first (up to four tokens) against
the ontology's labels, with backtracking to shorter windows when a later
part of the sentence fails to parse. The stop words "the", "a", "an" may
appear between phrases. The textual predicate groups are reversed into
execution order: the group next to "this" runs first, seeded by the final
class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import EmptyPlan, MissingFind, MissingThis, UnknownLabel
from .graph import Graph
from .labels import CLASS, PREDICATE, LabelIndex
from .terms import Iri

STOP_WORDS = {"the", "a", "an"}
MAX_PHRASE_TOKENS = 4

_TOKEN_RE = re.compile(r"[a-z0-9']+")


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class SubQuery:
    input_type: Iri | None
    predicate: Iri
    output_type: Iri | None

    def describe(self) -> str:
        def name(t):
            return t.local_name if t else "*"
        return f"({name(self.input_type)}, {self.predicate.local_name}, " \
               f"{name(self.output_type)})"


@dataclass(frozen=True)
class QueryPlan:
    stages: tuple[SubQuery, ...]
    seed_type: Iri


@dataclass(frozen=True)
class _Group:
    output_class: Iri | None
    predicate: Iri


class _QueryParser:
    def __init__(self, index: LabelIndex, tokens: list[str]):
        self.index = index
        self.tokens = tokens
        # Deepest position a label lookup failed at, for error reporting.
        self.fail_pos = -1
        self.fail_phrase = ""
        self.fail_kind = PREDICATE

    def _skip_stop_words(self, pos: int) -> int:
        while pos < len(self.tokens) and self.tokens[pos] in STOP_WORDS:
            pos += 1
        return pos

    def _windows(self, pos: int):
        limit = min(MAX_PHRASE_TOKENS, len(self.tokens) - pos)
        for width in range(limit, 0, -1):
            window = self.tokens[pos:pos + width]
            if "this" in window:
                continue
            yield width, " ".join(window)

    def _resolve(self, pos: int, width: int, phrase: str,
                 kind: str) -> Iri | None:
        term = self.index.try_lookup(phrase, kind)
        if kind == PREDICATE and term is not None \
                and not self.index.is_object_property(term):
            term = None  # data properties cannot drive matching
        if term is None and pos + width > self.fail_pos:
            self.fail_pos = pos + width
            self.fail_phrase = phrase
            self.fail_kind = kind
        return term

    def parse(self) -> tuple[list[_Group], Iri] | None:
        return self._groups(0)

    def _groups(self, pos: int) -> tuple[list[_Group], Iri] | None:
        pos = self._skip_stop_words(pos)
        if pos < len(self.tokens) and self.tokens[pos] == "this":
            seed = self._final_class(pos + 1)
            return ([], seed) if seed is not None else None

        # Optional class phrase first (longest window), then the predicate;
        # a failed continuation backtracks to shorter or absent classes.
        for cwidth, cphrase in self._windows(pos):
            cls = self._resolve(pos, cwidth, cphrase, CLASS)
            if cls is None:
                continue
            result = self._predicate_then_rest(pos + cwidth, cls)
            if result is not None:
                return result
        return self._predicate_then_rest(pos, None)

    def _predicate_then_rest(self, pos: int,
                             cls: Iri | None) -> tuple[list[_Group], Iri] | None:
        pos = self._skip_stop_words(pos)
        for pwidth, pphrase in self._windows(pos):
            pred = self._resolve(pos, pwidth, pphrase, PREDICATE)
            if pred is None:
                continue
            rest = self._groups(pos + pwidth)
            if rest is not None:
                groups, seed = rest
                return [_Group(cls, pred)] + groups, seed
        return None

    def _final_class(self, pos: int) -> Iri | None:
        pos = self._skip_stop_words(pos)
        for width, phrase in self._windows(pos):
            if pos + width != len(self.tokens):
                continue  # the seed class must consume the rest of the text
            cls = self._resolve(pos, width, phrase, CLASS)
            if cls is not None:
                return cls
        if pos >= len(self.tokens) and pos > self.fail_pos:
            self.fail_pos = pos
            self.fail_phrase = ""
            self.fail_kind = CLASS
        return None


def parse_query(graph: Graph, text: str) -> QueryPlan:
    """Parse a user sentence into an ordered execution plan."""
    tokens = tokenize(text)
    if not tokens or tokens[0] != "find":
        raise MissingFind('queries start with the keyword "find"')
    if "this" not in tokens:
        raise MissingThis('queries name their input with "this <class>"')
    parser = _QueryParser(LabelIndex(graph), tokens[1:])
    parsed = parser.parse()
    if parsed is None:
        raise UnknownLabel(parser.fail_phrase or "(end of query)",
                           parser.fail_kind, parser.fail_pos + 1)
    groups, seed = parsed
    if not groups:
        raise EmptyPlan("the query names no predicate between "
                        '"find" and "this"')
    stages = []
    for k, group in enumerate(reversed(groups)):
        stages.append(SubQuery(
            input_type=seed if k == 0 else None,
            predicate=group.predicate,
            output_type=group.output_class,
        ))
    return QueryPlan(tuple(stages), seed)

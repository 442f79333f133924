"""Label resolution: mapping user-facing phrases to ontology terms.

Classes are the individuals typed DomainClass; predicates those typed
DomainObjectProperty or DomainDataProperty. A phrase matches a term when
their normalized forms (lowercase, collapsed whitespace) are equal; failing
that, the phrase with one trailing "s" stripped is tried so simple plurals
like "places" find the label "place".
"""

from __future__ import annotations

from . import vocab as V
from .errors import AmbiguousLabel, UnknownLabel
from .graph import Graph
from .terms import Iri, Literal

CLASS = "class"
PREDICATE = "predicate"

_KIND_TYPES = {
    CLASS: (V.DOMAIN_CLASS,),
    PREDICATE: (V.DOMAIN_OBJECT_PROPERTY, V.DOMAIN_DATA_PROPERTY),
}


def normalize(phrase: str) -> str:
    return " ".join(phrase.lower().split())


class LabelIndex:
    """Phrase lookup table, built once per immutable graph snapshot."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self._by_kind: dict[str, dict[str, set[Iri]]] = {CLASS: {}, PREDICATE: {}}
        for kind, types in _KIND_TYPES.items():
            table = self._by_kind[kind]
            for typ in types:
                for term in graph.subjects(V.TYPE, typ):
                    if not isinstance(term, Iri):
                        continue
                    for label in graph.objects(term, V.LABEL):
                        if isinstance(label, Literal):
                            table.setdefault(normalize(label.lexical), set()).add(term)

    def lookup(self, phrase: str, kind: str) -> Iri:
        if kind not in self._by_kind:
            raise ValueError(f"unknown label kind: {kind!r}")
        norm = normalize(phrase)
        if not norm:
            raise UnknownLabel(phrase, kind)
        table = self._by_kind[kind]
        for candidate in (norm, norm[:-1] if norm.endswith("s") else None):
            if candidate is None:
                continue
            hits = table.get(candidate, ())
            if len(hits) == 1:
                return next(iter(hits))
            if len(hits) > 1:
                raise AmbiguousLabel(phrase, kind, hits)
        raise UnknownLabel(phrase, kind)

    def try_lookup(self, phrase: str, kind: str) -> Iri | None:
        """Like lookup but None for unknown phrases; ambiguity still raises."""
        try:
            return self.lookup(phrase, kind)
        except UnknownLabel:
            return None

    def is_object_property(self, term: Iri) -> bool:
        return self.graph.has(term, V.TYPE, V.DOMAIN_OBJECT_PROPERTY)


def resolve_label(graph: Graph, phrase: str, kind: str) -> Iri:
    """Unique term of the given kind whose label matches the phrase."""
    return LabelIndex(graph).lookup(phrase, kind)


def label_of(graph: Graph, term: Iri) -> str:
    """Display label: the first label alphabetically, else the local name."""
    labels = sorted(l.lexical for l in graph.objects(term, V.LABEL)
                    if isinstance(l, Literal))
    return labels[0] if labels else term.local_name

"""Indexed in-memory triple store.

A Graph is a set of triples with lookup indexes on (s), (p), (o), (s,p) and
(p,o). Insertion has set semantics. Graphs are mutable while being built;
``freeze()`` locks one so saturated snapshots can be shared across threads.

Blank node ids come from a per-graph counter so serializations are
deterministic.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import MalformedTriple
from .terms import BlankNode, Iri, Literal, Term, Triple, term_key


class Graph:
    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set()
        self._keys: set[tuple] = set()   # (s, p, o) mirror for cheap probes
        self._by_s: dict[Term, set[Triple]] = {}
        self._by_p: dict[Iri, set[Triple]] = {}
        self._by_o: dict[Term, set[Triple]] = {}
        self._by_sp: dict[tuple[Term, Iri], set[Triple]] = {}
        self._by_po: dict[tuple[Iri, Term], set[Triple]] = {}
        self._blank_counter = 0
        self._frozen = False
        for t in triples:
            self.add(t)

    # -- mutation ---------------------------------------------------------

    def add(self, triple: Triple) -> "Graph":
        if self._frozen:
            raise RuntimeError("graph is frozen; build a new snapshot instead")
        if not isinstance(triple, Triple):
            try:
                triple = Triple(*triple)
            except ValueError as exc:
                raise MalformedTriple(str(exc)) from exc
        if isinstance(triple.s, Literal):
            raise MalformedTriple("a literal cannot be the subject of a triple")
        if triple in self._triples:
            return self
        self._triples.add(triple)
        self._keys.add((triple.s, triple.p, triple.o))
        self._by_s.setdefault(triple.s, set()).add(triple)
        self._by_p.setdefault(triple.p, set()).add(triple)
        self._by_o.setdefault(triple.o, set()).add(triple)
        self._by_sp.setdefault((triple.s, triple.p), set()).add(triple)
        self._by_po.setdefault((triple.p, triple.o), set()).add(triple)
        return self

    def add_all(self, triples: Iterable[Triple]) -> "Graph":
        for t in triples:
            self.add(t)
        return self

    def new_blank(self) -> BlankNode:
        self._blank_counter += 1
        return BlankNode(f"b{self._blank_counter}")

    def freeze(self) -> "Graph":
        self._frozen = True
        return self

    def has_key(self, s: Term, p: Iri, o: Term) -> bool:
        return (s, p, o) in self._keys

    def copy(self) -> "Graph":
        g = Graph()
        g._triples = set(self._triples)
        g._keys = set(self._keys)
        g._by_s = {k: set(v) for k, v in self._by_s.items()}
        g._by_p = {k: set(v) for k, v in self._by_p.items()}
        g._by_o = {k: set(v) for k, v in self._by_o.items()}
        g._by_sp = {k: set(v) for k, v in self._by_sp.items()}
        g._by_po = {k: set(v) for k, v in self._by_po.items()}
        g._blank_counter = self._blank_counter
        return g

    # -- queries ----------------------------------------------------------

    def match(self, s: Term | None = None, p: Iri | None = None,
              o: Term | None = None) -> set[Triple]:
        """Triples matching the pattern; None is a wildcard."""
        return set(self.iter_match(s, p, o))

    def iter_match(self, s: Term | None = None, p: Iri | None = None,
                   o: Term | None = None):
        """Uncopied view of match(); do not mutate the graph while iterating."""
        if s is not None and p is not None and o is not None:
            t = Triple(s, p, o)
            return (t,) if t in self._triples else ()
        if s is not None and p is not None:
            return self._by_sp.get((s, p), ())
        if p is not None and o is not None:
            return self._by_po.get((p, o), ())
        if s is not None and o is not None:
            return tuple(t for t in self._by_s.get(s, ()) if t.o == o)
        if s is not None:
            return self._by_s.get(s, ())
        if p is not None:
            return self._by_p.get(p, ())
        if o is not None:
            return self._by_o.get(o, ())
        return self._triples

    def objects(self, s: Term, p: Iri) -> list[Term]:
        return sorted((t.o for t in self._by_sp.get((s, p), ())), key=term_key)

    def subjects(self, p: Iri, o: Term) -> list[Term]:
        return sorted((t.s for t in self._by_po.get((p, o), ())), key=term_key)

    def object(self, s: Term, p: Iri) -> Term | None:
        objs = self.objects(s, p)
        return objs[0] if objs else None

    def has(self, s: Term | None = None, p: Iri | None = None,
            o: Term | None = None) -> bool:
        return bool(self.match(s, p, o))

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def sorted(self) -> list[Triple]:
        return sorted(self._triples, key=lambda t: t.key())

    def __le__(self, other: "Graph") -> bool:
        return self._triples <= other._triples

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._triples == other._triples

    def __repr__(self):
        return f"Graph({len(self._triples)} triples)"


# -- isomorphism ----------------------------------------------------------
#
# Canonical blank-node relabeling: iterative color refinement with hashed
# string colors, forking on still-ambiguous groups. Exponential only for
# highly automorphic graphs, which realistic inputs are not.

_FORK_LIMIT = 2000


def _ground_label(t: Term) -> str:
    if isinstance(t, BlankNode):
        return "*"
    return repr(term_key(t))


def _hash_color(parts) -> str:
    import hashlib
    return hashlib.sha256("\x1f".join(parts).encode()).hexdigest()


def canonical_triples(graph: Graph) -> tuple:
    """Graph as a sorted triple-key tuple with blank nodes renamed canonically."""
    blanks = sorted({t for tr in graph
                     for t in (tr.s, tr.o) if isinstance(t, BlankNode)},
                    key=term_key)
    if not blanks:
        return tuple(t.key() for t in graph.sorted())

    budget = [_FORK_LIMIT]

    def refine(colors: dict[BlankNode, str]) -> dict[BlankNode, str]:
        while True:
            nxt = {}
            for b in blanks:
                sig = []
                for tr in graph.match(s=b):
                    other = colors[tr.o] if isinstance(tr.o, BlankNode) \
                        else _ground_label(tr.o)
                    sig.append(f"out {tr.p.value} {other}")
                for tr in graph.match(o=b):
                    other = colors[tr.s] if isinstance(tr.s, BlankNode) \
                        else _ground_label(tr.s)
                    sig.append(f"in {tr.p.value} {other}")
                nxt[b] = _hash_color([colors[b], *sorted(sig)])
            if len(set(nxt.values())) == len(set(colors.values())):
                return colors
            colors = nxt

    def solve(colors: dict[BlankNode, str]) -> tuple:
        colors = refine(colors)
        groups: dict[str, list[BlankNode]] = {}
        for b in blanks:
            groups.setdefault(colors[b], []).append(b)
        ambiguous = [sorted(groups[c], key=term_key)
                     for c in sorted(groups) if len(groups[c]) > 1]
        if not ambiguous:
            order = sorted(blanks, key=lambda b: colors[b])
            names = {b: BlankNode(f"c{i}") for i, b in enumerate(order)}
            relabeled = [
                Triple(names.get(t.s, t.s), t.p, names.get(t.o, t.o))
                for t in graph
            ]
            return tuple(sorted(t.key() for t in relabeled))
        best = None
        for pick in ambiguous[0]:
            budget[0] -= 1
            if budget[0] < 0:
                raise RuntimeError("canonicalization fork budget exceeded")
            forked = dict(colors)
            forked[pick] = _hash_color([colors[pick], "picked"])
            result = solve(forked)
            if best is None or result < best:
                best = result
        return best

    return solve({b: "b" for b in blanks})


def isomorphic(a: Graph, b: Graph) -> bool:
    """True iff the graphs are equal up to blank-node renaming."""
    if len(a) != len(b):
        return False
    return canonical_triples(a) == canonical_triples(b)

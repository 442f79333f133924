"""Forward-chaining saturation and the graph queries built on top of it.

The closure semantics are expressed as safe Horn rules over triple patterns
(variables may appear in any position, including the predicate) and run
semi-naively to a least fixpoint:

  * subClassOf transitivity and class-membership propagation
  * subPropertyOf transitivity and triple propagation
  * inverseOf symmetry and application
  * equivalentProperty symmetric-transitive closure with propagation
  * transitivity for properties typed TransitiveProperty
  * the service-description rules that derive rootInputOf / rootOutputOf
    from the parameter tree and hasIORelation from relation subjects

Derivations that would produce a malformed triple (literal subject,
non-IRI predicate) are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from . import vocab as V
from .errors import SaturationBudgetExceeded
from .graph import Graph
from .terms import Iri, Literal, Term, Triple

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return f"?{self.name}"


Pattern = tuple[Union[Var, Term], Union[Var, Iri], Union[Var, Term]]


@dataclass(frozen=True)
class Rule:
    name: str
    body: tuple[Pattern, ...]
    head: Pattern

    def __post_init__(self):
        body_vars = {t for pat in self.body for t in pat if isinstance(t, Var)}
        head_vars = {t for t in self.head if isinstance(t, Var)}
        if not head_vars <= body_vars:
            raise ValueError(f"rule {self.name}: unsafe head variables "
                             f"{head_vars - body_vars}")


def _v(name: str) -> Var:
    return Var(name)


_X, _Y, _Z = _v("x"), _v("y"), _v("z")
_P, _Q, _R = _v("p"), _v("q"), _v("r")
_C, _D, _E = _v("c"), _v("d"), _v("e")
_SVC, _REL, _PARAM = _v("service"), _v("rel"), _v("param")

CLOSURE_RULES: tuple[Rule, ...] = (
    Rule("subclass-transitive",
         ((_C, V.SUB_CLASS_OF, _D), (_D, V.SUB_CLASS_OF, _E)),
         (_C, V.SUB_CLASS_OF, _E)),
    Rule("subclass-membership",
         ((_X, V.TYPE, _C), (_C, V.SUB_CLASS_OF, _D)),
         (_X, V.TYPE, _D)),
    Rule("subproperty-transitive",
         ((_P, V.SUB_PROPERTY_OF, _Q), (_Q, V.SUB_PROPERTY_OF, _R)),
         (_P, V.SUB_PROPERTY_OF, _R)),
    Rule("subproperty-propagate",
         ((_X, _P, _Y), (_P, V.SUB_PROPERTY_OF, _Q)),
         (_X, _Q, _Y)),
    Rule("inverse-symmetric",
         ((_P, V.INVERSE_OF, _Q),),
         (_Q, V.INVERSE_OF, _P)),
    Rule("inverse-apply",
         ((_X, _P, _Y), (_P, V.INVERSE_OF, _Q)),
         (_Y, _Q, _X)),
    Rule("equivalent-symmetric",
         ((_P, V.EQUIVALENT_PROPERTY, _Q),),
         (_Q, V.EQUIVALENT_PROPERTY, _P)),
    Rule("equivalent-transitive",
         ((_P, V.EQUIVALENT_PROPERTY, _Q), (_Q, V.EQUIVALENT_PROPERTY, _R)),
         (_P, V.EQUIVALENT_PROPERTY, _R)),
    Rule("equivalent-propagate",
         ((_X, _P, _Y), (_P, V.EQUIVALENT_PROPERTY, _Q)),
         (_X, _Q, _Y)),
    Rule("transitive-apply",
         ((_P, V.TYPE, V.TRANSITIVE_PROPERTY), (_X, _P, _Y), (_Y, _P, _Z)),
         (_X, _P, _Z)),
)

SERVICE_RULES: tuple[Rule, ...] = (
    Rule("root-input-from-tree",
         ((_X, V.TYPE, V.ROOT_INPUT_PARAMETER),
          (_SVC, V.HAS_REST_INPUT, _Y),
          (_Y, V.SUB_INPUT_OF, _X)),
         (_X, V.ROOT_INPUT_OF, _SVC)),
    Rule("root-output-from-tree",
         ((_X, V.TYPE, V.ROOT_OUTPUT_PARAMETER),
          (_SVC, V.HAS_REST_OUTPUT, _Y),
          (_Y, V.SUB_OUTPUT_OF, _X)),
         (_X, V.ROOT_OUTPUT_OF, _SVC)),
    Rule("relation-from-root",
         ((_PARAM, V.ROOT_PARAMETER_OF, _SVC),
          (_REL, V.SUBJECT, _PARAM)),
         (_SVC, V.HAS_IO_RELATION, _REL)),
    Rule("relation-from-subparameter",
         ((_PARAM, V.ROOT_PARAMETER_OF, _SVC),
          (_Y, V.SUB_PARAMETER_OF, _PARAM),
          (_REL, V.SUBJECT, _Y)),
         (_SVC, V.HAS_IO_RELATION, _REL)),
)

BUILTIN_RULES: tuple[Rule, ...] = CLOSURE_RULES + SERVICE_RULES


# Rules are compiled to integer variable slots so the semi-naive loop works
# on plain lists instead of dicts. For each choice of the delta pattern the
# body is reordered delta-first, which lets the remaining patterns run with
# bound positions against the graph indexes.

class _CompiledRule:
    __slots__ = ("name", "head", "orders", "nvars")

    def __init__(self, rule: Rule):
        slots: dict[Var, int] = {}

        def slot(t):
            if isinstance(t, Var):
                if t not in slots:
                    slots[t] = len(slots)
                return slots[t]
            return t

        body = [tuple(slot(t) for t in pat) for pat in rule.body]
        self.name = rule.name
        self.head = tuple(slot(t) for t in rule.head)
        self.nvars = len(slots)
        self.orders = []
        for delta_pos in range(len(body)):
            order = [body[delta_pos]] + [p for i, p in enumerate(body)
                                         if i != delta_pos]
            self.orders.append(tuple(order))


def _fire(rule: _CompiledRule, full: Graph, delta: Graph,
          out: dict[tuple, Triple]):
    n = len(rule.orders[0])
    hs, hp, ho = rule.head
    full_keys = full._keys
    for order in rule.orders:
        stack = [([None] * rule.nvars, 0)]
        while stack:
            binding, i = stack.pop()
            if i == n:
                s = binding[hs] if type(hs) is int else hs
                p = binding[hp] if type(hp) is int else hp
                o = binding[ho] if type(ho) is int else ho
                if isinstance(s, Literal) or not isinstance(p, Iri):
                    continue
                key = (s, p, o)
                if key not in full_keys and key not in out:
                    out[key] = Triple(s, p, o)
                continue
            ps, pp, po = order[i]
            s = binding[ps] if type(ps) is int else ps
            p = binding[pp] if type(pp) is int else pp
            o = binding[po] if type(po) is int else po
            if isinstance(s, Literal) or (p is not None
                                          and not isinstance(p, Iri)):
                continue
            source = delta if i == 0 else full
            for triple in source.iter_match(s, p, o):
                ext = list(binding)
                if type(ps) is int and s is None:
                    ext[ps] = triple.s
                if type(pp) is int and p is None:
                    if ext[pp] is None:
                        ext[pp] = triple.p
                    elif ext[pp] != triple.p:
                        continue
                if type(po) is int and o is None:
                    if ext[po] is None:
                        ext[po] = triple.o
                    elif ext[po] != triple.o:
                        continue
                stack.append((ext, i + 1))


_BUILTIN_COMPILED = tuple(_CompiledRule(r) for r in BUILTIN_RULES)


def saturate(graph: Graph, extra_rules: Sequence[Rule] = (),
             budget: int = DEFAULT_BUDGET) -> Graph:
    """Least fixpoint of the graph under the closure and service rules.

    Returns a new frozen graph; the input is left untouched. Raises
    SaturationBudgetExceeded once more than ``budget`` new triples have
    been derived.
    """
    rules = _BUILTIN_COMPILED + tuple(_CompiledRule(r) for r in extra_rules)
    full = graph.copy()
    delta = graph.copy()
    derived = 0
    while len(delta):
        fresh: dict[tuple, Triple] = {}
        for rule in rules:
            _fire(rule, full, delta, fresh)
        derived += len(fresh)
        if derived > budget:
            raise SaturationBudgetExceeded(
                f"saturation derived more than {budget} triples")
        delta = Graph()
        for t in fresh.values():
            full.add(t)
            delta.add(t)
    return full.freeze()


# -- queries over saturated graphs ---------------------------------------

def is_subclass_of(graph: Graph, c: Iri, d: Iri) -> bool:
    """c is d, or below d in the saturated hierarchy, or d is DomainThing."""
    if c == d or d == V.DOMAIN_THING:
        return True
    return Triple(c, V.SUB_CLASS_OF, d) in graph


def _equivalence_class(graph: Graph, p: Iri) -> set[Iri]:
    cls = {p}
    for o in graph.objects(p, V.EQUIVALENT_PROPERTY):
        if isinstance(o, Iri):
            cls.add(o)
    return cls


def _subproperties(graph: Graph, p: Iri) -> set[Iri]:
    return {s for s in graph.subjects(V.SUB_PROPERTY_OF, p)
            if isinstance(s, Iri)}


@dataclass(frozen=True)
class PredicateSynonyms:
    """Forward/inverse predicate sets with generalization ranks.

    rank 0: the predicate or an equivalent; rank 1: a subproperty of one.
    Inverse partners cost one extra generalization step on top of the
    forward member they invert.
    """

    forward: dict[Iri, int] = field(default_factory=dict)
    inverse: dict[Iri, int] = field(default_factory=dict)

    @property
    def forward_set(self) -> set[Iri]:
        return set(self.forward)

    @property
    def inverse_set(self) -> set[Iri]:
        return set(self.inverse)


def predicate_synonyms(graph: Graph, p: Iri) -> PredicateSynonyms:
    forward: dict[Iri, int] = {}
    for q in _equivalence_class(graph, p):
        forward[q] = 0
    for q, rank in list(forward.items()):
        for sub in _subproperties(graph, q):
            if sub not in forward:
                forward[sub] = 1
    inverse: dict[Iri, int] = {}
    for q, rank in forward.items():
        partners = set()
        for o in graph.objects(q, V.INVERSE_OF):
            if isinstance(o, Iri):
                partners.add(o)
        for partner in partners:
            for member in _equivalence_class(graph, partner):
                cost = rank + 1
                if member not in inverse or inverse[member] > cost:
                    inverse[member] = cost
    return PredicateSynonyms(forward, inverse)


def subclass_distance(graph: Graph, c: Iri, d: Iri) -> int | None:
    """Chain length from c up to d over minimal strict-subclass steps.

    None when c is not below d. DomainThing is universal: classes with no
    asserted path to it sit one conceptual step away.
    """
    if c == d:
        return 0
    if not is_subclass_of(graph, c, d):
        return None

    def strict_supers(x: Iri) -> set[Iri]:
        ups = set()
        for o in graph.objects(x, V.SUB_CLASS_OF):
            if isinstance(o, Iri) and o != x \
                    and Triple(o, V.SUB_CLASS_OF, x) not in graph:
                ups.add(o)
        return ups

    # BFS over the transitive reduction of the strict superclass relation.
    frontier = {c}
    seen = {c}
    dist = 0
    while frontier:
        dist += 1
        nxt = set()
        for x in frontier:
            ups = strict_supers(x)
            minimal = {u for u in ups
                       if not any(v != u and Triple(v, V.SUB_CLASS_OF, u) in graph
                                  for v in ups)}
            for u in minimal:
                if u == d:
                    return dist
                if u not in seen:
                    seen.add(u)
                    nxt.add(u)
        frontier = nxt
    if d == V.DOMAIN_THING:
        return 1
    return None  # pragma: no cover - guarded by is_subclass_of above

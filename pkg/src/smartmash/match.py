"""Service discovery: find the registered service satisfying a subquery.

A service is a candidate when one of its input/output relations carries the
queried predicate (or an equivalent, a subproperty of one, or an inverse,
which swaps the query's input/output roles), its input parameter type is a
subclass of the queried input type and its output parameter type a subclass
of the queried output type. Absent types default to the universal class.

Candidates are ranked by (predicateRank, inputRank, outputRank): 0 is an
exact predicate/equivalent and an exact type; subproperty matches cost 1,
inverse matches one extra, and type ranks count subclass-chain steps. Ties
break on the service IRI so matching is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import vocab as V
from .errors import NoServiceFound
from .graph import Graph
from .model import IORelation, ServiceDescriptor, ServiceRegistry
from .query import SubQuery
from .reason import predicate_synonyms, subclass_distance
from .terms import Iri


@dataclass(frozen=True)
class MatchResult:
    service: Iri
    relation: Iri
    predicate_rank: int
    input_rank: int
    output_rank: int
    inverted: bool

    @property
    def rank(self) -> tuple[int, int, int]:
        return (self.predicate_rank, self.input_rank, self.output_rank)

    def to_dict(self) -> dict:
        return {
            "service": self.service.value,
            "relation": self.relation.value,
            "rank": {"predicate": self.predicate_rank,
                     "input": self.input_rank,
                     "output": self.output_rank},
            "inverted": self.inverted,
        }


def _node_type(descriptor: ServiceDescriptor, param: Iri) -> Iri:
    node = descriptor.find_node(param)
    if node is not None and node.type_class is not None:
        return node.type_class
    return V.DOMAIN_THING


def _type_rank(graph: Graph, node_type: Iri, query_type: Iri | None) -> int | None:
    if query_type is None:
        query_type = V.DOMAIN_THING
    return subclass_distance(graph, node_type, query_type)


def _score(graph: Graph, descriptor: ServiceDescriptor, rel: IORelation,
           q: SubQuery, synonyms) -> list[MatchResult]:
    results = []
    subject_type = _node_type(descriptor, rel.subject_param)
    object_type = _node_type(descriptor, rel.object_param)

    forward_rank = synonyms.forward.get(rel.predicate)
    if forward_rank is not None:
        in_rank = _type_rank(graph, object_type, q.input_type)
        out_rank = _type_rank(graph, subject_type, q.output_type)
        if in_rank is not None and out_rank is not None:
            results.append(MatchResult(descriptor.iri, rel.iri, forward_rank,
                                       in_rank, out_rank, inverted=False))

    inverse_rank = synonyms.inverse.get(rel.predicate)
    if inverse_rank is not None:
        # Inverse use swaps the query's input/output roles.
        in_rank = _type_rank(graph, subject_type, q.input_type)
        out_rank = _type_rank(graph, object_type, q.output_type)
        if in_rank is not None and out_rank is not None:
            results.append(MatchResult(descriptor.iri, rel.iri, inverse_rank,
                                       in_rank, out_rank, inverted=True))
    return results


def list_candidates(registry: ServiceRegistry, q: SubQuery) -> list[MatchResult]:
    """Every satisfying (service, relation) pair, best first."""
    graph = registry.ontology
    synonyms = predicate_synonyms(graph, q.predicate)
    candidates: list[MatchResult] = []
    for service in registry:
        descriptor = registry.services[service]
        for rel in descriptor.io_relations:
            candidates.extend(_score(graph, descriptor, rel, q, synonyms))
    candidates.sort(key=lambda m: (m.rank, m.service.value, m.relation.value,
                                   m.inverted))
    return candidates


def match_service(registry: ServiceRegistry, q: SubQuery) -> MatchResult:
    """The single best match for the subquery."""
    candidates = list_candidates(registry, q)
    if not candidates:
        raise NoServiceFound(q)
    return candidates[0]

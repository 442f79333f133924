"""Service execution: HTTP GET construction, response decoding, and the
session graph of typed output individuals linked back to their inputs.

Mashups run stage by stage; every root individual produced by stage k-1
fans out into one invocation of stage k, with the next service's inputs
filled by searching that individual (own literals first, then linked
sub-individuals depth-first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Callable, Protocol
from urllib.parse import quote, urlparse

import requests

from . import vocab as V
from .errors import (ChainBindingError, InvalidValue,
                     MissingMandatoryInput, TransportError)
from .graph import Graph
from .labels import label_of
from .match import MatchResult, match_service
from .model import (REST_OUTPUT, STATIC_REST_INPUT, SUB_LOGICAL_INPUT,
                    SUB_LOGICAL_OUTPUT, VARIABLE_REST_INPUT, ParameterNode,
                    ServiceDescriptor, ServiceRegistry, value_type_of)
from .query import QueryPlan
from .terms import BOOLEAN, DECIMAL, STRING, Iri, Literal, Triple
from .xpathlite import XmlNode, document, eval_path, sniff_and_parse

SESSION_SCHEME = "urn:smart:session:"

DEFAULT_TIMEOUT_MS = 10_000
MAX_REDIRECTS = 3
MAX_RESPONSE_BYTES = 8 * 1024 * 1024


# -- transport --------------------------------------------------------------

@dataclass
class TransportRequest:
    url: str
    timeout_ms: int = DEFAULT_TIMEOUT_MS


@dataclass
class TransportResponse:
    status: int
    content_type: str
    body: bytes


class Transport(Protocol):
    def get(self, request: TransportRequest) -> TransportResponse: ...


class HttpTransport:
    """Real outbound GET client: bounded redirects and response size."""

    def __init__(self):
        self.session = requests.Session()
        self.session.max_redirects = MAX_REDIRECTS

    def get(self, request: TransportRequest) -> TransportResponse:
        try:
            resp = self.session.get(request.url, stream=True,
                                    timeout=request.timeout_ms / 1000.0)
            body = b""
            for chunk in resp.iter_content(chunk_size=65536):
                body += chunk
                if len(body) > MAX_RESPONSE_BYTES:
                    resp.close()
                    raise TransportError("response exceeds the size cap",
                                         url=request.url)
            return TransportResponse(resp.status_code,
                                     resp.headers.get("Content-Type", ""),
                                     body)
        except requests.RequestException as exc:
            raise TransportError(str(exc), url=request.url) from exc


class FakeTransport:
    """In-memory transport for tests: exact URLs or a fallback handler."""

    def __init__(self, routes: dict[str, TransportResponse] | None = None,
                 handler: Callable[[str], TransportResponse] | None = None):
        self.routes = dict(routes or {})
        self.handler = handler
        self.requests: list[str] = []

    def get(self, request: TransportRequest) -> TransportResponse:
        self.requests.append(request.url)
        if request.url in self.routes:
            return self.routes[request.url]
        if self.handler is not None:
            return self.handler(request.url)
        raise TransportError("no fake route", url=request.url, status=None)


# -- input forms -------------------------------------------------------------

@dataclass(frozen=True)
class FormField:
    param_iri: Iri
    label: str
    value_type: str
    mandatory: bool
    path_labels: tuple[str, ...]

    def to_dict(self) -> dict:
        return {"paramIri": self.param_iri.value, "label": self.label,
                "valueType": self.value_type, "mandatory": self.mandatory,
                "pathLabels": list(self.path_labels)}


@dataclass(frozen=True)
class FormSpec:
    service_iri: Iri
    title: str
    fields: tuple[FormField, ...]

    def to_dict(self) -> dict:
        return {"serviceIri": self.service_iri.value, "title": self.title,
                "fields": [f.to_dict() for f in self.fields]}


@dataclass(frozen=True)
class Binding:
    param_iri: Iri
    value: str


def form_spec_for(descriptor: ServiceDescriptor, graph: Graph) -> FormSpec:
    """Input fields for the variable REST leaves of the root input tree."""
    fields = []

    def visit(node: ParameterNode, path: tuple[str, ...]):
        if node.kind == VARIABLE_REST_INPUT:
            dp = node.from_data_property
            fields.append(FormField(
                param_iri=node.iri,
                label=label_of(graph, dp) if dp else node.iri.local_name,
                value_type=value_type_of(graph, dp),
                mandatory=node.mandatory,
                path_labels=path,
            ))
            return
        for child in node.children:  # children are kept IRI-sorted
            step = path
            if child.kind in (SUB_LOGICAL_INPUT, SUB_LOGICAL_OUTPUT) \
                    and child.from_object_property is not None:
                step = path + (label_of(graph, child.from_object_property),)
            visit(child, step)

    visit(descriptor.root_input, ())
    return FormSpec(descriptor.iri, label_of(graph, descriptor.iri),
                    tuple(fields))


# -- URL construction ---------------------------------------------------------

def _validate_value(param: Iri, value: str, value_type: str):
    if value_type == DECIMAL:
        try:
            d = Decimal(value)
            if not d.is_finite():
                raise InvalidOperation
        except InvalidOperation:
            raise InvalidValue(param, value, "decimal")
    elif value_type == BOOLEAN and value not in ("true", "false"):
        raise InvalidValue(param, value, "boolean")


def _encode(s: str) -> str:
    return quote(s, safe="")


def build_url(descriptor: ServiceDescriptor, bindings: list[Binding],
              graph: Graph | None = None) -> str:
    """The GET URL: endpoint, then static, then bound variable parameters.

    Each group is sorted by parameterName; keys and values are
    percent-encoded with the RFC 3986 unreserved set.
    """
    bound = {b.param_iri: b.value for b in bindings}
    pairs: list[tuple[str, str]] = []
    statics = {n.iri: n for n in descriptor.static_inputs}
    for n in descriptor.root_input.walk():  # statics may sit inside the tree
        if n.kind == STATIC_REST_INPUT:
            statics.setdefault(n.iri, n)
    for node in sorted(statics.values(),
                       key=lambda n: (n.parameter_name or "", n.iri.value)):
        pairs.append((node.parameter_name, node.parameter_value))
    variables = []
    for node in descriptor.variable_inputs:
        value = bound.get(node.iri)
        if value is None:
            if node.mandatory:
                raise MissingMandatoryInput(node.iri)
            continue
        if graph is not None:
            _validate_value(node.iri, value,
                            value_type_of(graph, node.from_data_property))
        variables.append((node.parameter_name, value, node.iri.value))
    variables.sort(key=lambda t: (t[0], t[2]))
    pairs += [(name, value) for name, value, _ in variables]
    query = "&".join(f"{_encode(k)}={_encode(v)}" for k, v in pairs)
    if not query:
        return descriptor.endpoint
    separator = "&" if urlparse(descriptor.endpoint).query else "?"
    return f"{descriptor.endpoint}{separator}{query}"


# -- output building ----------------------------------------------------------

@dataclass
class ResultGraph:
    graph: Graph
    roots: list[Iri]
    input_individual: Iri
    warnings: list[str] = field(default_factory=list)


class Session:
    """Fresh individual IRIs scoped to one execution session."""

    def __init__(self, session_id: str):
        self.id = str(session_id)
        self._counter = 0

    def fresh(self) -> Iri:
        iri = Iri(f"{SESSION_SCHEME}{self.id}:{self._counter}")
        self._counter += 1
        return iri


def _literal_for(graph: Graph, data_property: Iri, text: str,
                 warnings: list[str]) -> Literal:
    value_type = value_type_of(graph, data_property)
    try:
        return Literal(text, value_type)
    except ValueError:
        warnings.append(f"value {text!r} is not a valid {value_type} for "
                        f"{data_property.value}; stored as a string")
        return Literal(text, STRING)


def build_outputs(descriptor: ServiceDescriptor, doc: XmlNode,
                  input_individual: Iri, input_graph: Graph,
                  session: Session, graph: Graph,
                  invert_links: bool = False) -> ResultGraph:
    """Typed output individuals extracted from one service response.

    For every result node located by the service's resultXPath, the root
    output path yields root individuals; sub-logical outputs become linked
    sub-individuals; every REST output path (relative to the root node)
    fills in one literal on its logical parent. Each root is finally linked
    to the input individual through the service's relations.
    """
    out = Graph()
    warnings: list[str] = []
    roots: list[Iri] = []

    def fill(node: ParameterNode, individual: Iri, root_xml: XmlNode):
        for child in node.children:
            if child.kind == REST_OUTPUT:
                matches = eval_path(root_xml, child.rest_output_xpath)
                if not matches:
                    warnings.append(
                        f"{child.rest_output_xpath!r} matched nothing for "
                        f"{child.iri.value}")
                    continue
                if len(matches) > 1:
                    warnings.append(
                        f"{child.rest_output_xpath!r} matched "
                        f"{len(matches)} nodes for {child.iri.value}; "
                        "using the first")
                lit = _literal_for(graph, child.from_data_property,
                                   matches[0].text, warnings)
                out.add(Triple(individual, child.from_data_property, lit))
            elif child.kind == SUB_LOGICAL_OUTPUT:
                sub = session.fresh()
                if child.type_class is not None:
                    out.add(Triple(sub, V.TYPE, child.type_class))
                out.add(Triple(individual, child.from_object_property, sub))
                fill(child, sub, root_xml)

    result_nodes = eval_path(document(doc), descriptor.result_xpath)
    root_param = descriptor.root_output
    for result_node in result_nodes:
        for root_xml in eval_path(result_node, root_param.root_output_xpath):
            root = session.fresh()
            roots.append(root)
            out.add(Triple(root, V.TYPE, root_param.type_class))
            fill(root_param, root, root_xml)
            for rel in descriptor.io_relations:
                if invert_links:
                    out.add(Triple(input_individual, rel.predicate, root))
                else:
                    out.add(Triple(root, rel.predicate, input_individual))

    for t in input_graph:
        out.add(t)
    return ResultGraph(out, roots, input_individual, warnings)


# -- plan execution -----------------------------------------------------------

def _seed_graph(descriptor: ServiceDescriptor, bindings: list[Binding],
                individual: Iri, graph: Graph,
                warnings: list[str]) -> Graph:
    seed = Graph()
    if descriptor.root_input.type_class is not None:
        seed.add(Triple(individual, V.TYPE, descriptor.root_input.type_class))
    nodes = {n.iri: n for n in descriptor.variable_inputs}
    for b in bindings:
        node = nodes.get(b.param_iri)
        if node is None or node.from_data_property is None:
            continue
        lit = _literal_for(graph, node.from_data_property, b.value, warnings)
        seed.add(Triple(individual, node.from_data_property, lit))
    return seed


def _find_value(graph: Graph, start: Iri, data_property: Iri) -> str | None:
    """Own literal first, then depth-first over outgoing links."""
    stack = [start]
    seen = {start}
    while stack:
        node = stack.pop()
        values = [o for o in graph.objects(node, data_property)
                  if isinstance(o, Literal)]
        if values:
            return values[0].lexical
        linked = []
        for t in sorted(graph.match(s=node), key=lambda t: t.key()):
            if isinstance(t.o, Iri) and t.o not in seen and t.p != V.TYPE:
                linked.append(t.o)
                seen.add(t.o)
        stack.extend(reversed(linked))
    return None


def _invoke(descriptor: ServiceDescriptor, bindings: list[Binding],
            input_individual: Iri, input_graph: Graph, transport: Transport,
            session: Session, graph: Graph, inverted: bool) -> ResultGraph:
    url = build_url(descriptor, bindings, graph)
    response = transport.get(TransportRequest(url))
    if not 200 <= response.status < 300:
        raise TransportError(f"service answered HTTP {response.status}",
                             url=url, status=response.status)
    doc = sniff_and_parse(response.content_type, response.body)
    return build_outputs(descriptor, doc, input_individual, input_graph,
                         session, graph, invert_links=inverted)


def execute_plan(registry: ServiceRegistry, plan: QueryPlan,
                 seed_bindings: list[Binding], transport: Transport,
                 session_id: str) -> ResultGraph:
    """Run every stage of the plan, chaining outputs into inputs."""
    graph = registry.ontology
    session = Session(session_id)
    matches: list[MatchResult] = [match_service(registry, q)
                                  for q in plan.stages]

    warnings: list[str] = []
    first = registry.services[matches[0].service]
    seed = session.fresh()
    current = ResultGraph(
        _seed_graph(first, seed_bindings, seed, graph, warnings),
        [seed], seed, warnings)

    stage_bindings: list[Binding] | None = list(seed_bindings)
    for k, match in enumerate(matches):
        descriptor = registry.services[match.service]
        combined = Graph()
        roots: list[Iri] = []
        stage_warnings: list[str] = list(current.warnings)
        invoked = False
        missing: Iri | None = None
        for upstream in current.roots:
            if k == 0:
                bindings = stage_bindings
            else:
                bindings = []
                for node in descriptor.variable_inputs:
                    value = _find_value(current.graph, upstream,
                                        node.from_data_property)
                    if value is None:
                        if node.mandatory:
                            missing = node.iri
                            bindings = None
                            break
                    else:
                        bindings.append(Binding(node.iri, value))
                if bindings is None:
                    continue
            result = _invoke(descriptor, bindings, upstream, current.graph,
                             transport, session, graph, match.inverted)
            invoked = True
            combined.add_all(result.graph)
            roots.extend(result.roots)
            stage_warnings.extend(result.warnings)
        if not invoked:
            if missing is None:
                mandatory = [n.iri for n in descriptor.variable_inputs
                             if n.mandatory]
                missing = mandatory[0] if mandatory else descriptor.iri
            raise ChainBindingError(k, missing)
        current = ResultGraph(combined, roots,
                              current.roots[0] if current.roots else seed,
                              stage_warnings)
    return ResultGraph(current.graph, current.roots, seed, current.warnings)

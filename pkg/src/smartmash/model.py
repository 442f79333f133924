"""Typed service descriptors extracted from a saturated ontology graph.

A descriptor is the validated view of one single-input single-output
service: its endpoint, the logical parameter trees (whose leaves are the
raw REST parameters), and the relations that tie its output to its input.
Validation is closed-world: whatever the descriptor needs must be present
in the graph, derived or asserted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from urllib.parse import urlparse

from . import vocab as V
from .errors import UnknownService
from .graph import Graph
from .terms import BOOLEAN, DECIMAL, STRING, Iri, Literal
from .xpathlite import parse_path

ROOT_LOGICAL_INPUT = "rootLogicalInput"
SUB_LOGICAL_INPUT = "subLogicalInput"
ROOT_LOGICAL_OUTPUT = "rootLogicalOutput"
SUB_LOGICAL_OUTPUT = "subLogicalOutput"
VARIABLE_REST_INPUT = "variableRestInput"
STATIC_REST_INPUT = "staticRestInput"
REST_OUTPUT = "restOutput"

LOGICAL_KINDS = (ROOT_LOGICAL_INPUT, SUB_LOGICAL_INPUT,
                 ROOT_LOGICAL_OUTPUT, SUB_LOGICAL_OUTPUT)

_NAME_SUFFIX = {
    ROOT_LOGICAL_INPUT: "RLI",
    ROOT_LOGICAL_OUTPUT: "RLO",
    SUB_LOGICAL_INPUT: "LI",
    SUB_LOGICAL_OUTPUT: "LO",
    VARIABLE_REST_INPUT: "RI",
    STATIC_REST_INPUT: "SI",
    REST_OUTPUT: "RO",
}

_CAMEL_CASE = re.compile(r"^[A-Z][A-Za-z0-9]*$")

_RANGE_TO_VALUE_TYPE = {
    V.XSD_STRING: STRING,
    V.XSD_DECIMAL: DECIMAL,
    V.XSD_BOOLEAN: BOOLEAN,
}


@dataclass
class ParameterNode:
    iri: Iri
    kind: str
    type_class: Iri | None = None
    from_object_property: Iri | None = None
    from_data_property: Iri | None = None
    parameter_name: str | None = None
    parameter_value: str | None = None
    mandatory: bool = True
    root_output_xpath: str | None = None
    rest_output_xpath: str | None = None
    children: list["ParameterNode"] = field(default_factory=list)

    @property
    def is_logical(self) -> bool:
        return self.kind in LOGICAL_KINDS

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class IORelation:
    iri: Iri
    subject_param: Iri
    predicate: Iri
    object_param: Iri


@dataclass
class ServiceDescriptor:
    iri: Iri
    endpoint: str
    result_xpath: str
    root_input: ParameterNode
    root_output: ParameterNode
    static_inputs: list[ParameterNode]
    variable_inputs: list[ParameterNode]
    rest_outputs: list[ParameterNode]
    io_relations: list[IORelation]

    def find_node(self, iri: Iri) -> ParameterNode | None:
        for root in (self.root_input, self.root_output):
            for node in root.walk():
                if node.iri == iri:
                    return node
        for node in self.static_inputs:
            if node.iri == iri:
                return node
        return None


@dataclass
class Issue:
    code: str
    message: str
    subject: Iri | None = None

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message,
                "subject": self.subject.value if self.subject else None}

    def __str__(self):
        where = f" [{self.subject.value}]" if self.subject else ""
        return f"{self.code}: {self.message}{where}"


@dataclass
class ValidationReport:
    service: Iri
    errors: list[Issue] = field(default_factory=list)
    warnings: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict:
        return {
            "service": self.service.value,
            "ok": self.ok,
            "errors": [i.to_dict() for i in self.errors],
            "warnings": [i.to_dict() for i in self.warnings],
        }

    def render(self) -> str:
        lines = [f"{'OK  ' if self.ok else 'FAIL'} {self.service.value}"]
        lines += [f"  error   {i}" for i in self.errors]
        lines += [f"  warning {i}" for i in self.warnings]
        return "\n".join(lines)


@dataclass
class ServiceRegistry:
    services: dict[Iri, ServiceDescriptor]
    ontology: Graph

    def get(self, iri: Iri) -> ServiceDescriptor | None:
        return self.services.get(iri)

    def __len__(self):
        return len(self.services)

    def __iter__(self):
        return iter(sorted(self.services, key=lambda i: i.value))


def value_type_of(graph: Graph, data_property: Iri | None) -> str:
    """Field value type from the data property's declared range; default string."""
    if data_property is None:
        return STRING
    rng = graph.object(data_property, V.RANGE)
    return _RANGE_TO_VALUE_TYPE.get(rng, STRING)


class _Builder:
    """Builds one descriptor, accumulating issues instead of failing fast."""

    def __init__(self, graph: Graph, service: Iri):
        self.g = graph
        self.service = service
        self.report = ValidationReport(service)
        self.seen_nodes: set[Iri] = set()

    def error(self, code: str, message: str, subject: Iri | None = None):
        self.report.errors.append(Issue(code, message, subject))

    def warn(self, code: str, message: str, subject: Iri | None = None):
        self.report.warnings.append(Issue(code, message, subject))

    # -- graph helpers ----------------------------------------------------

    def _iris(self, terms) -> list[Iri]:
        return [t for t in terms if isinstance(t, Iri)]

    def _literal(self, s: Iri, p: Iri, required: bool,
                 code: str, what: str) -> str | None:
        values = [o for o in self.g.objects(s, p) if isinstance(o, Literal)]
        if not values:
            if required:
                self.error(code, f"missing {what}", s)
            return None
        if len(values) > 1:
            self.error(code, f"conflicting {what} values", s)
        return values[0].lexical

    def _iri_object(self, s: Iri, p: Iri, required: bool,
                    code: str, what: str) -> Iri | None:
        values = self._iris(self.g.objects(s, p))
        if not values:
            if required:
                self.error(code, f"missing {what}", s)
            return None
        if len(values) > 1:
            self.error(code, f"conflicting {what} values", s)
        return values[0]

    def _typed(self, node: Iri, cls: Iri) -> bool:
        return self.g.has(node, V.TYPE, cls)

    def _path(self, lexical: str | None, node: Iri, what: str):
        if lexical is None:
            return
        try:
            parse_path(lexical)
        except ValueError as exc:
            self.error("bad_path", f"{what} {lexical!r}: {exc}", node)

    # -- construction -----------------------------------------------------

    def build(self) -> ServiceDescriptor | None:
        g, s = self.g, self.service

        endpoint = self._literal(s, V.ENDPOINT, True, "missing_endpoint", "endpoint")
        if endpoint is not None:
            parsed = urlparse(endpoint)
            if parsed.scheme not in ("http", "https") or not parsed.netloc:
                self.error("bad_endpoint",
                           f"endpoint {endpoint!r} is not an absolute URL", s)

        result_xpath = self._literal(s, V.RESULT_XPATH, True,
                                     "missing_result_xpath", "resultXPath")
        self._path(result_xpath, s, "resultXPath")

        root_input = self._root(V.ROOT_INPUT_OF, V.ROOT_INPUT_PARAMETER,
                                ROOT_LOGICAL_INPUT, "input")
        root_output = self._root(V.ROOT_OUTPUT_OF, V.ROOT_OUTPUT_PARAMETER,
                                 ROOT_LOGICAL_OUTPUT, "output")

        static_inputs = self._static_inputs()
        self._check_rest_attachment(root_input)

        relations = self._relations(root_input, root_output)

        self._naming(root_input, root_output, static_inputs, relations)

        if not self.report.ok:
            return None
        variable_inputs = [n for n in root_input.walk()
                           if n.kind == VARIABLE_REST_INPUT]
        rest_outputs = [n for n in root_output.walk() if n.kind == REST_OUTPUT]
        return ServiceDescriptor(
            iri=s, endpoint=endpoint, result_xpath=result_xpath,
            root_input=root_input, root_output=root_output,
            static_inputs=static_inputs, variable_inputs=variable_inputs,
            rest_outputs=rest_outputs, io_relations=relations,
        )

    def _root(self, root_of: Iri, root_class: Iri, kind: str,
              side: str) -> ParameterNode | None:
        roots = self._iris(self.g.subjects(root_of, self.service))
        if len(roots) != 1:
            self.error("siso_violation",
                       f"expected exactly 1 root {side} parameter, found "
                       f"{len(roots)}", self.service)
            return None
        root = roots[0]
        if not self._typed(root, root_class):
            self.warn("untyped_root",
                      f"root {side} is not typed {root_class.local_name}", root)
        return self._logical(root, kind)

    def _logical(self, node: Iri, kind: str) -> ParameterNode:
        if node in self.seen_nodes:
            self.error("tree_cycle",
                       "parameter occurs twice in the tree (cycle or shared "
                       "child)", node)
            return ParameterNode(node, kind)
        self.seen_nodes.add(node)

        if self._typed(node, V.REST_PARAMETER):
            self.error("disjoint_kinds",
                       "logical parameter is also typed as a REST parameter",
                       node)

        p = ParameterNode(node, kind)
        p.type_class = self._iri_object(node, V.PARAM_TYPE, True,
                                        "missing_type", "type class")
        if kind in (SUB_LOGICAL_INPUT, SUB_LOGICAL_OUTPUT):
            p.from_object_property = self._iri_object(
                node, V.FROM_OBJECT_PROPERTY, True,
                "missing_from_object_property", "fromObjectProperty")
        if kind == ROOT_LOGICAL_OUTPUT:
            p.root_output_xpath = self._literal(
                node, V.ROOT_OUTPUT_XPATH, True,
                "missing_root_output_xpath", "rootOutputXPath")
            self._path(p.root_output_xpath, node, "rootOutputXPath")

        to_child = V.TO_INPUT if kind in (ROOT_LOGICAL_INPUT, SUB_LOGICAL_INPUT) \
            else V.TO_OUTPUT
        sub_kind = SUB_LOGICAL_INPUT if to_child == V.TO_INPUT else SUB_LOGICAL_OUTPUT
        for child in sorted(self._iris(self.g.objects(node, to_child)),
                            key=lambda i: i.value):
            if self._typed(child, V.REST_PARAMETER):
                p.children.append(self._rest(child, input_side=(to_child == V.TO_INPUT)))
            else:
                p.children.append(self._logical(child, sub_kind))
        return p

    def _rest(self, node: Iri, input_side: bool) -> ParameterNode:
        if node in self.seen_nodes:
            self.error("tree_cycle",
                       "parameter occurs twice in the tree (cycle or shared "
                       "child)", node)
            return ParameterNode(node, REST_OUTPUT)
        self.seen_nodes.add(node)

        if self._typed(node, V.LOGICAL_PARAMETER):
            self.error("disjoint_kinds",
                       "REST parameter is also typed as a logical parameter",
                       node)

        if input_side:
            # Closed world: a REST input that is not static is variable.
            static = self._typed(node, V.STATIC_REST_INPUT_PARAMETER)
            p = ParameterNode(node, STATIC_REST_INPUT if static
                              else VARIABLE_REST_INPUT)
            p.parameter_name = self._literal(node, V.PARAMETER_NAME, True,
                                             "missing_parameter_name",
                                             "parameterName")
            if static:
                p.parameter_value = self._literal(node, V.PARAMETER_VALUE, True,
                                                  "missing_parameter_value",
                                                  "parameterValue")
            else:
                p.from_data_property = self._iri_object(
                    node, V.FROM_DATA_PROPERTY, True,
                    "missing_from_data_property", "fromDataProperty")
            mandatory = self._literal(node, V.MANDATORY, False, "", "")
            if mandatory is not None:
                if mandatory in ("true", "false"):
                    p.mandatory = mandatory == "true"
                else:
                    self.error("bad_mandatory",
                               f"mandatory must be a boolean, got {mandatory!r}",
                               node)
        else:
            p = ParameterNode(node, REST_OUTPUT)
            p.from_data_property = self._iri_object(
                node, V.FROM_DATA_PROPERTY, True,
                "missing_from_data_property", "fromDataProperty")
            p.rest_output_xpath = self._literal(node, V.REST_OUTPUT_XPATH, True,
                                                "missing_rest_output_xpath",
                                                "restOutputXPath")
            self._path(p.rest_output_xpath, node, "restOutputXPath")

        if self.g.objects(node, V.TO_INPUT) or self.g.objects(node, V.TO_OUTPUT):
            self.error("rest_with_children",
                       "REST parameter cannot have child parameters", node)
        return p

    def _static_inputs(self) -> list[ParameterNode]:
        nodes = [n for n in self._iris(self.g.objects(self.service,
                                                      V.HAS_REST_INPUT))
                 if self._typed(n, V.STATIC_REST_INPUT_PARAMETER)
                 and n not in self.seen_nodes]
        return [self._rest(n, input_side=True)
                for n in sorted(nodes, key=lambda i: i.value)]

    def _check_rest_attachment(self, root_input: ParameterNode | None):
        in_tree = set()
        if root_input is not None:
            in_tree = {n.iri for n in root_input.walk()}
        for n in self._iris(self.g.objects(self.service, V.HAS_REST_INPUT)):
            if self._typed(n, V.STATIC_REST_INPUT_PARAMETER):
                continue
            if n not in in_tree:
                self.error("unreachable_input",
                           "variable REST input is not reachable from the "
                           "root input tree", n)
        if root_input is not None:
            for node in root_input.walk():
                if node.kind == VARIABLE_REST_INPUT \
                        and not self.g.has(self.service, V.HAS_REST_INPUT,
                                           node.iri):
                    self.warn("unattached_input",
                              "REST input is not tied to the service via "
                              "restInputOf", node.iri)

    def _relations(self, root_input, root_output) -> list[IORelation]:
        input_nodes = {n.iri for n in root_input.walk()
                       if n.is_logical} if root_input else set()
        output_nodes = {n.iri for n in root_output.walk()
                        if n.is_logical} if root_output else set()
        rel_iris = sorted(self._iris(self.g.objects(self.service,
                                                    V.HAS_IO_RELATION)),
                          key=lambda i: i.value)
        if not rel_iris:
            self.warn("missing_io_relation",
                      "service has no hasIORelation; it cannot be discovered "
                      "by queries", self.service)
        relations = []
        for rel in rel_iris:
            subj = self._iri_object(rel, V.SUBJECT, True,
                                    "missing_relation_subject", "subject")
            pred = self._iri_object(rel, V.PREDICATE, True,
                                    "missing_relation_predicate", "predicate")
            obj = self._iri_object(rel, V.OBJECT, True,
                                   "missing_relation_object", "object")
            if None in (subj, pred, obj):
                continue
            if subj not in output_nodes:
                self.error("relation_subject_not_output",
                           "relation subject is not a logical output of this "
                           "service", rel)
            if obj not in input_nodes:
                self.error("relation_object_not_input",
                           "relation object is not a logical input of this "
                           "service", rel)
            if not self.g.has(pred, V.TYPE, V.DOMAIN_OBJECT_PROPERTY):
                self.error("relation_predicate_untyped",
                           f"{pred.value} is not typed DomainObjectProperty",
                           rel)
            relations.append(IORelation(rel, subj, pred, obj))
        return relations

    def _naming(self, root_input, root_output, static_inputs, relations):
        if not _CAMEL_CASE.match(self.service.local_name):
            self.warn("naming", "service name is not CamelCase", self.service)
        named: list[tuple[Iri, str]] = [(r.iri, "IORel") for r in relations]
        for root in (root_input, root_output):
            if root is None:
                continue
            named += [(n.iri, _NAME_SUFFIX[n.kind]) for n in root.walk()]
        named += [(n.iri, _NAME_SUFFIX[n.kind]) for n in static_inputs]
        prefixes = set()
        for iri, suffix in named:
            local = iri.local_name
            if "_" not in local:
                self.warn("naming",
                          f"name should look like PREFIX_..._{suffix}", iri)
                continue
            prefixes.add(local.split("_", 1)[0])
            if not local.endswith("_" + suffix):
                self.warn("naming", f"suffix does not match {suffix}", iri)
        if len(prefixes) > 1:
            self.warn("naming",
                      "parameter names use inconsistent service prefixes: "
                      + ", ".join(sorted(prefixes)), self.service)


def validate_service(graph: Graph, service: Iri) -> ValidationReport:
    """Full validation report for one registered service."""
    if not graph.has(service, V.TYPE, V.SISO_SERVICE):
        raise UnknownService(f"{service.value} is not a registered "
                             "single-input single-output service")
    builder = _Builder(graph, service)
    builder.build()
    return builder.report


def extract_registry(graph: Graph) -> tuple[ServiceRegistry, list[ValidationReport]]:
    """Descriptors for every valid service; reports for all of them.

    Invalid services are excluded from the registry but still reported.
    """
    services = sorted({s for s in graph.subjects(V.TYPE, V.SISO_SERVICE)
                       if isinstance(s, Iri)}, key=lambda i: i.value)
    registry: dict[Iri, ServiceDescriptor] = {}
    reports = []
    for s in services:
        builder = _Builder(graph, s)
        descriptor = builder.build()
        reports.append(builder.report)
        if descriptor is not None:
            registry[s] = descriptor
    return ServiceRegistry(registry, graph), reports

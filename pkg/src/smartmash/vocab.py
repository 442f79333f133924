"""Well-known vocabulary terms and the axioms every ontology starts from.

The service-description vocabulary lives in the engine's default namespace.
Standard RDF/RDFS/OWL terms are used for typing, labels, class/property
hierarchy, inverses, equivalence and transitivity markers.
"""

from __future__ import annotations

from .graph import Graph
from .terms import Iri, Triple

NS = "http://smart.example/ont#"
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

PREFIXES = {
    "": NS,
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "owl": OWL_NS,
    "xsd": XSD_NS,
}


def term(local: str) -> Iri:
    return Iri(NS + local)


# meta (typing, hierarchy, labels)
TYPE = Iri(RDF_NS + "type")
SUB_CLASS_OF = Iri(RDFS_NS + "subClassOf")
SUB_PROPERTY_OF = Iri(RDFS_NS + "subPropertyOf")
LABEL = Iri(RDFS_NS + "label")
DOMAIN = Iri(RDFS_NS + "domain")
RANGE = Iri(RDFS_NS + "range")
INVERSE_OF = Iri(OWL_NS + "inverseOf")
EQUIVALENT_PROPERTY = Iri(OWL_NS + "equivalentProperty")
TRANSITIVE_PROPERTY = Iri(OWL_NS + "TransitiveProperty")
OWL_CLASS = Iri(OWL_NS + "Class")
OWL_THING = Iri(OWL_NS + "Thing")
OWL_OBJECT_PROPERTY = Iri(OWL_NS + "ObjectProperty")
OWL_DATA_PROPERTY = Iri(OWL_NS + "DatatypeProperty")
OWL_INVERSE_FUNCTIONAL = Iri(OWL_NS + "InverseFunctionalProperty")

XSD_STRING = Iri(XSD_NS + "string")
XSD_DECIMAL = Iri(XSD_NS + "decimal")
XSD_BOOLEAN = Iri(XSD_NS + "boolean")

# classes
SERVICE_THING = term("ServiceThing")
DOMAIN_THING = term("DomainThing")
SERVICE = term("Service")
SISO_SERVICE = term("SISOService")
PARAMETER = term("Parameter")
INPUT_PARAMETER = term("InputParameter")
OUTPUT_PARAMETER = term("OutputParameter")
LOGICAL_PARAMETER = term("LogicalParameter")
LOGICAL_INPUT_PARAMETER = term("LogicalInputParameter")
LOGICAL_OUTPUT_PARAMETER = term("LogicalOutputParameter")
ROOT_INPUT_PARAMETER = term("RootInputParameter")
ROOT_OUTPUT_PARAMETER = term("RootOutputParameter")
SUB_INPUT_PARAMETER = term("SubInputParameter")
SUB_OUTPUT_PARAMETER = term("SubOutputParameter")
REST_PARAMETER = term("RestParameter")
REST_INPUT_PARAMETER = term("RestInputParameter")
STATIC_REST_INPUT_PARAMETER = term("StaticRestInputParameter")
VARIABLE_REST_INPUT_PARAMETER = term("VariableRestInputParameter")
REST_OUTPUT_PARAMETER = term("RestOutputParameter")
INPUT_OUTPUT_RELATION = term("InputOutputRelation")
INPUT_TO_OUTPUT_RELATION = term("InputToOutputRelation")
OUTPUT_TO_INPUT_RELATION = term("OutputToInputRelation")
DOMAIN_CLASS = term("DomainClass")
DOMAIN_PROPERTY = term("DomainProperty")
DOMAIN_OBJECT_PROPERTY = term("DomainObjectProperty")
DOMAIN_DATA_PROPERTY = term("DomainDataProperty")

# object properties
TOP_DOMAIN_OBJECT_PROPERTY = term("topDomainObjectProperty")
TOP_SERVICE_OBJECT_PROPERTY = term("topServiceObjectProperty")
FROM_DATA_PROPERTY = term("fromDataProperty")
FROM_OBJECT_PROPERTY = term("fromObjectProperty")
HAS_IO_RELATION = term("hasIORelation")
HAS_REST_INPUT = term("hasRestInput")
HAS_REST_OUTPUT = term("hasRestOutput")
HAS_ROOT_PARAMETER = term("hasRootParameter")
HAS_ROOT_INPUT = term("hasRootInput")
HAS_ROOT_OUTPUT = term("hasRootOutput")
SUBJECT = term("subject")
PREDICATE = term("predicate")
OBJECT = term("object")
REST_INPUT_OF = term("restInputOf")
REST_OUTPUT_OF = term("restOutputOf")
ROOT_PARAMETER_OF = term("rootParameterOf")
ROOT_INPUT_OF = term("rootInputOf")
ROOT_OUTPUT_OF = term("rootOutputOf")
SUB_INPUT_OF = term("subInputOf")
SUB_OUTPUT_OF = term("subOutputOf")
SUB_PARAMETER_OF = term("subParameterOf")
TO_INPUT = term("toInput")
TO_OUTPUT = term("toOutput")
FROM_LOGICAL_INPUT = term("fromLogicalInput")
FROM_LOGICAL_OUTPUT = term("fromLogicalOutput")
TO_REST_PARAMETER = term("toRestParameter")
PARAM_TYPE = term("type")

# data properties
TOP_DOMAIN_DATA_PROPERTY = term("topDomainDataProperty")
TOP_SERVICE_DATA_PROPERTY = term("topServiceDataProperty")
ENDPOINT = term("endpoint")
MANDATORY = term("mandatory")
PARAMETER_VALUE = term("parameterValue")
PARAMETER_NAME = term("parameterName")
RESULT_XPATH = term("resultXPath")
ROOT_OUTPUT_XPATH = term("rootOutputXPath")
REST_OUTPUT_XPATH = term("restOutputXPath")

_CLASS_TREE = [
    (SERVICE, SERVICE_THING),
    (SISO_SERVICE, SERVICE),
    (PARAMETER, SERVICE_THING),
    (INPUT_PARAMETER, PARAMETER),
    (OUTPUT_PARAMETER, PARAMETER),
    (LOGICAL_PARAMETER, PARAMETER),
    (LOGICAL_INPUT_PARAMETER, LOGICAL_PARAMETER),
    (LOGICAL_INPUT_PARAMETER, INPUT_PARAMETER),
    (LOGICAL_OUTPUT_PARAMETER, LOGICAL_PARAMETER),
    (LOGICAL_OUTPUT_PARAMETER, OUTPUT_PARAMETER),
    (ROOT_INPUT_PARAMETER, LOGICAL_INPUT_PARAMETER),
    (SUB_INPUT_PARAMETER, LOGICAL_INPUT_PARAMETER),
    (ROOT_OUTPUT_PARAMETER, LOGICAL_OUTPUT_PARAMETER),
    (SUB_OUTPUT_PARAMETER, LOGICAL_OUTPUT_PARAMETER),
    (REST_PARAMETER, PARAMETER),
    (REST_INPUT_PARAMETER, REST_PARAMETER),
    (REST_INPUT_PARAMETER, INPUT_PARAMETER),
    (STATIC_REST_INPUT_PARAMETER, REST_INPUT_PARAMETER),
    (VARIABLE_REST_INPUT_PARAMETER, REST_INPUT_PARAMETER),
    (REST_OUTPUT_PARAMETER, REST_PARAMETER),
    (REST_OUTPUT_PARAMETER, OUTPUT_PARAMETER),
    (INPUT_OUTPUT_RELATION, SERVICE_THING),
    (INPUT_TO_OUTPUT_RELATION, INPUT_OUTPUT_RELATION),
    (OUTPUT_TO_INPUT_RELATION, INPUT_OUTPUT_RELATION),
    (DOMAIN_CLASS, SERVICE_THING),
    (DOMAIN_PROPERTY, SERVICE_THING),
    (DOMAIN_OBJECT_PROPERTY, DOMAIN_PROPERTY),
    (DOMAIN_DATA_PROPERTY, DOMAIN_PROPERTY),
]

_PROPERTY_TOPS = [
    (FROM_DATA_PROPERTY, TOP_SERVICE_OBJECT_PROPERTY),
    (FROM_OBJECT_PROPERTY, TOP_SERVICE_OBJECT_PROPERTY),
    (HAS_IO_RELATION, TOP_SERVICE_OBJECT_PROPERTY),
    (HAS_REST_INPUT, TOP_SERVICE_OBJECT_PROPERTY),
    (HAS_REST_OUTPUT, TOP_SERVICE_OBJECT_PROPERTY),
    (HAS_ROOT_PARAMETER, TOP_SERVICE_OBJECT_PROPERTY),
    (HAS_ROOT_INPUT, TOP_SERVICE_OBJECT_PROPERTY),
    (HAS_ROOT_OUTPUT, TOP_SERVICE_OBJECT_PROPERTY),
    (SUBJECT, TOP_SERVICE_OBJECT_PROPERTY),
    (PREDICATE, TOP_SERVICE_OBJECT_PROPERTY),
    (OBJECT, TOP_SERVICE_OBJECT_PROPERTY),
    (REST_INPUT_OF, TOP_SERVICE_OBJECT_PROPERTY),
    (REST_OUTPUT_OF, TOP_SERVICE_OBJECT_PROPERTY),
    (SUB_PARAMETER_OF, TOP_SERVICE_OBJECT_PROPERTY),
    (ROOT_PARAMETER_OF, TOP_SERVICE_OBJECT_PROPERTY),
    (TO_INPUT, TOP_SERVICE_OBJECT_PROPERTY),
    (TO_OUTPUT, TOP_SERVICE_OBJECT_PROPERTY),
    (TO_REST_PARAMETER, TOP_SERVICE_OBJECT_PROPERTY),
    (PARAM_TYPE, TOP_SERVICE_OBJECT_PROPERTY),
    (ENDPOINT, TOP_SERVICE_DATA_PROPERTY),
    (MANDATORY, TOP_SERVICE_DATA_PROPERTY),
    (PARAMETER_VALUE, TOP_SERVICE_DATA_PROPERTY),
    (PARAMETER_NAME, TOP_SERVICE_DATA_PROPERTY),
    (RESULT_XPATH, TOP_SERVICE_DATA_PROPERTY),
    (ROOT_OUTPUT_XPATH, TOP_SERVICE_DATA_PROPERTY),
    (REST_OUTPUT_XPATH, TOP_SERVICE_DATA_PROPERTY),
]

# Tree-navigation and root/sub property axioms the closure rules rely on.
_PROPERTY_AXIOMS = [
    Triple(FROM_LOGICAL_INPUT, SUB_PROPERTY_OF, SUB_INPUT_OF),
    Triple(FROM_LOGICAL_OUTPUT, SUB_PROPERTY_OF, SUB_OUTPUT_OF),
    Triple(SUB_INPUT_OF, SUB_PROPERTY_OF, SUB_PARAMETER_OF),
    Triple(SUB_OUTPUT_OF, SUB_PROPERTY_OF, SUB_PARAMETER_OF),
    Triple(SUB_INPUT_OF, TYPE, TRANSITIVE_PROPERTY),
    Triple(SUB_OUTPUT_OF, TYPE, TRANSITIVE_PROPERTY),
    Triple(REST_INPUT_OF, INVERSE_OF, HAS_REST_INPUT),
    Triple(REST_OUTPUT_OF, INVERSE_OF, HAS_REST_OUTPUT),
    Triple(ROOT_INPUT_OF, INVERSE_OF, HAS_ROOT_INPUT),
    Triple(ROOT_OUTPUT_OF, INVERSE_OF, HAS_ROOT_OUTPUT),
    Triple(ROOT_PARAMETER_OF, INVERSE_OF, HAS_ROOT_PARAMETER),
    Triple(TO_INPUT, INVERSE_OF, FROM_LOGICAL_INPUT),
    Triple(TO_OUTPUT, INVERSE_OF, FROM_LOGICAL_OUTPUT),
    Triple(TO_REST_PARAMETER, INVERSE_OF, FROM_DATA_PROPERTY),
    Triple(ROOT_INPUT_OF, SUB_PROPERTY_OF, ROOT_PARAMETER_OF),
    Triple(ROOT_OUTPUT_OF, SUB_PROPERTY_OF, ROOT_PARAMETER_OF),
]


def base_axioms() -> list[Triple]:
    axioms = [Triple(c, SUB_CLASS_OF, d) for c, d in _CLASS_TREE]
    axioms += [Triple(p, SUB_PROPERTY_OF, top) for p, top in _PROPERTY_TOPS]
    axioms += _PROPERTY_AXIOMS
    return axioms


def base_graph() -> Graph:
    """Fresh graph preloaded with the baked-in axioms."""
    return Graph(base_axioms())

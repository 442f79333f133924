"""Semantic registry, discovery and mashup execution for REST web services.

The pipeline: service descriptions live as triples in an ontology graph;
saturation materializes the derived structure; keyword queries resolve to
typed subqueries; the matcher picks services by their input/output
relations; the executor builds GET requests and turns responses back into
linked, typed individuals.
"""

from .errors import SmartError
from .execute import (Binding, FakeTransport, FormField, FormSpec,
                      HttpTransport, ResultGraph, Session, TransportRequest,
                      TransportResponse, build_outputs, build_url,
                      execute_plan, form_spec_for)
from .fixtures import serve_fixtures
from .gateway import AppState, build_snapshot, create_app
from .graph import Graph, isomorphic
from .labels import resolve_label
from .match import MatchResult, list_candidates, match_service
from .model import (IORelation, ParameterNode, ServiceDescriptor,
                    ServiceRegistry, ValidationReport, extract_registry,
                    validate_service)
from .query import QueryPlan, SubQuery, parse_query
from .reason import Rule, Var, is_subclass_of, predicate_synonyms, saturate
from .terms import BlankNode, Iri, Literal, Triple
from .turtle import parse_document, serialize
from .xpathlite import PathExpr, XmlNode, eval_path, json_to_xml, parse_path

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

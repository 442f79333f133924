from __future__ import annotations

import pytest

from smartmash import vocab as V
from smartmash.errors import UnknownService
from smartmash.graph import Graph
from smartmash.model import extract_registry, validate_service
from smartmash.reason import saturate
from smartmash.terms import Triple
from smartmash.turtle import parse_document

from conftest import iri

PREFIXES = """\
@prefix : <http://smart.example/ont#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
"""

MINIMAL_SERVICE = PREFIXES + """\
:Thing a owl:Class, :DomainClass ; rdfs:label "thing" .
:val a owl:DatatypeProperty, :DomainDataProperty ; rdfs:range xsd:string .
:rel a owl:ObjectProperty, :DomainObjectProperty ; rdfs:label "rel" .

:EchoService a :SISOService ;
    :endpoint "http://127.0.0.1:9/echo" ;
    :resultXPath "/" ;
    :hasRestInput :E_q_RI .
:E_q_RI a :VariableRestInputParameter ;
    :fromLogicalInput :E_In_RLI ;
    :fromDataProperty :val ;
    :parameterName "q" .
:E_In_RLI a :RootInputParameter ; :type :Thing .
:E_Out_RLO a :RootOutputParameter ; :type :Thing ;
    :rootOutputOf :EchoService ;
    :rootOutputXPath "/" ;
    :toOutput :E_v_RO .
:E_v_RO a :RestOutputParameter ;
    :restOutputOf :EchoService ;
    :fromDataProperty :val ;
    :restOutputXPath "v" .
:E_IORel a :InputOutputRelation ;
    :subject :E_Out_RLO ; :predicate :rel ; :object :E_In_RLI .
"""


def _registry_from(text: str):
    return extract_registry(saturate(V.base_graph().add_all(parse_document(text))))


def test_fixture_registry_has_four_services(registry):
    assert len(registry) == 4
    assert set(registry.services) == {
        iri("GeoNamesSearch"), iri("GetOperatorService"),
        iri("SignalMeasurementService"), iri("TrueCallerReverseLookup"),
    }


def test_get_operator_descriptor(registry):
    d = registry.get(iri("GetOperatorService"))
    assert [n.parameter_name for n in d.variable_inputs] == ["n"]
    assert d.variable_inputs[0].from_data_property == iri("msisdn")
    assert d.root_input.type_class == iri("PhoneNumber")
    assert d.root_output.root_output_xpath == "Operator"
    assert d.rest_outputs[0].rest_output_xpath == "."
    rel = d.io_relations[0]
    assert (rel.subject_param, rel.predicate, rel.object_param) == (
        iri("GO_Operator_RLO"), iri("providerOf"), iri("GO_PhoneNumber_RLI"))


def test_geonames_descriptor(registry):
    d = registry.get(iri("GeoNamesSearch"))
    assert d.result_xpath == "/geonames/geoname"
    assert d.root_output.root_output_xpath == "/"
    country = [n for n in d.root_output.children
               if n.kind == "subLogicalOutput"]
    assert len(country) == 1
    assert country[0].from_object_property == iri("inCountry")
    assert len(country[0].children) == 2


def test_children_are_iri_sorted(registry):
    d = registry.get(iri("GeoNamesSearch"))
    names = [c.iri.value for c in d.root_output.children]
    assert names == sorted(names)


def test_inference_equivalence(fixtures_text):
    base = parse_document(fixtures_text)
    asserted = base.copy()
    asserted.add(Triple(iri("GetOperatorService"), V.HAS_IO_RELATION,
                        iri("GO_IORel")))
    reduced = Graph()
    dropped = Triple(iri("GO_PhoneNumber_RLI"), V.ROOT_INPUT_OF,
                     iri("GetOperatorService"))
    for t in base:
        if t != dropped:
            reduced.add(t)
    reg_a, _ = extract_registry(saturate(V.base_graph().add_all(asserted)))
    reg_b, _ = extract_registry(saturate(V.base_graph().add_all(reduced)))
    assert reg_a.get(iri("GetOperatorService")) \
        == reg_b.get(iri("GetOperatorService"))


def test_registry_is_deterministic(fixtures_graph):
    a, _ = extract_registry(fixtures_graph)
    b, _ = extract_registry(fixtures_graph)
    assert a.services == b.services


def test_registered_services_revalidate_clean(registry, fixtures_graph):
    for service in registry:
        assert validate_service(fixtures_graph, service).ok


def test_unknown_service_raises(fixtures_graph):
    with pytest.raises(UnknownService):
        validate_service(fixtures_graph, iri("NoSuchService"))


def test_minimal_service_is_valid():
    reg, reports = _registry_from(MINIMAL_SERVICE)
    assert len(reg) == 1
    assert reports[0].ok
    assert not reports[0].warnings


def test_missing_parameter_name_is_error():
    text = MINIMAL_SERVICE.replace(' ;\n    :parameterName "q" .', " .")
    assert ":parameterName" not in text
    reg, reports = _registry_from(text)
    assert len(reg) == 0
    assert any(i.code == "missing_parameter_name" for i in reports[0].errors)


def test_two_root_inputs_is_siso_error():
    text = MINIMAL_SERVICE + """\
:E_In2_RLI a :RootInputParameter ; :type :Thing ;
    :rootInputOf :EchoService .
"""
    reg, reports = _registry_from(text)
    assert len(reg) == 0
    assert any(i.code == "siso_violation" for i in reports[0].errors)


def test_bad_suffix_is_warning():
    text = MINIMAL_SERVICE.replace("E_In_RLI", "E_In_XYZ")
    reg, reports = _registry_from(text)
    assert len(reg) == 1  # warnings do not exclude the service
    assert any(i.code == "naming" and "RLI" in i.message
               for i in reports[0].warnings)


def test_missing_relation_is_warning():
    text = "\n".join(l for l in MINIMAL_SERVICE.splitlines()
                     if not l.startswith(":E_IORel")
                     and ":subject" not in l) + "\n"
    reg, reports = _registry_from(text)
    assert len(reg) == 1
    assert any(i.code == "missing_io_relation" for i in reports[0].warnings)


def test_disjoint_kinds_is_error():
    text = MINIMAL_SERVICE + ":E_q_RI a :SubInputParameter .\n"
    reg, reports = _registry_from(text)
    assert len(reg) == 0
    assert any(i.code == "disjoint_kinds" for i in reports[0].errors)


def test_tree_cycle_is_error():
    text = MINIMAL_SERVICE + """\
:E_Sub_LI a :SubInputParameter ; :type :Thing ;
    :fromObjectProperty :rel ;
    :fromLogicalInput :E_In_RLI ;
    :toInput :E_Sub2_LI .
:E_Sub2_LI a :SubInputParameter ; :type :Thing ;
    :fromObjectProperty :rel ;
    :toInput :E_Sub_LI .
"""
    reg, reports = _registry_from(text)
    assert len(reg) == 0
    assert any(i.code == "tree_cycle" for i in reports[0].errors)


def test_bad_endpoint_is_error():
    text = MINIMAL_SERVICE.replace('"http://127.0.0.1:9/echo"', '"not a url"')
    reg, reports = _registry_from(text)
    assert len(reg) == 0
    assert any(i.code == "bad_endpoint" for i in reports[0].errors)


def test_mandatory_defaults_to_true_and_parses(registry):
    gns = registry.get(iri("GeoNamesSearch"))
    assert gns.variable_inputs[0].mandatory is True  # asserted true
    go = registry.get(iri("GetOperatorService"))
    assert go.variable_inputs[0].mandatory is True   # absent, defaulted


def test_mixed_tree_is_legal():
    text = MINIMAL_SERVICE + """\
:E_Sub_LI a :SubInputParameter ; :type :Thing ;
    :fromObjectProperty :rel ;
    :fromLogicalInput :E_In_RLI ;
    :toInput :E_q2_RI .
:E_q2_RI a :VariableRestInputParameter ;
    :restInputOf :EchoService ;
    :fromDataProperty :val ;
    :parameterName "q2" .
"""
    reg, reports = _registry_from(text)
    assert reports[0].ok, reports[0].render()
    d = reg.get(iri("EchoService"))
    assert {n.parameter_name for n in d.variable_inputs} == {"q", "q2"}

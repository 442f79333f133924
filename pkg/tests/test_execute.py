from __future__ import annotations

import pytest

from smartmash import vocab as V
from smartmash.errors import (ChainBindingError, InvalidValue,
                              MissingMandatoryInput, TransportError)
from smartmash.execute import (Binding, FakeTransport, Session,
                               TransportResponse, build_outputs, build_url,
                               execute_plan, form_spec_for)
from smartmash.graph import Graph
from smartmash.model import extract_registry
from smartmash.query import parse_query
from smartmash.reason import saturate
from smartmash.terms import Iri, Literal, Triple
from smartmash.turtle import parse_document
from smartmash.xpathlite import parse_xml

from conftest import iri

# The coordinates-in, region-out service shape: latitude/longitude REST
# inputs wrapped in a Location, a Place root output with a Country
# sub-output whose literals sit at country/* in the response.
REGION_SERVICE = """\
@prefix : <http://smart.example/ont#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .

:Place a owl:Class, :DomainClass ; rdfs:label "place" .
:Country a owl:Class, :DomainClass ; rdfs:label "country" .
:Location a owl:Class, :DomainClass ; rdfs:label "location" .
:name a owl:DatatypeProperty, :DomainDataProperty ; rdfs:range xsd:string ; rdfs:label "name" .
:id a owl:DatatypeProperty, :DomainDataProperty ; rdfs:range xsd:string ; rdfs:label "id" .
:latitude a owl:DatatypeProperty, :DomainDataProperty ; rdfs:range xsd:decimal ; rdfs:label "latitude" .
:longitude a owl:DatatypeProperty, :DomainDataProperty ; rdfs:range xsd:decimal ; rdfs:label "longitude" .
:inCountry a owl:ObjectProperty, :DomainObjectProperty ; rdfs:label "in country" .
:location a owl:ObjectProperty, :DomainObjectProperty ; rdfs:label "located at" .

:RegionLookup a :SISOService ;
    rdfs:label "Region Lookup" ;
    :endpoint "http://127.0.0.1:7341/region" ;
    :resultXPath "/" ;
    :hasRestInput :RL_lat_RI, :RL_lng_RI .
:RL_lat_RI a :VariableRestInputParameter ;
    :fromLogicalInput :RL_Location_RLI ;
    :fromDataProperty :latitude ;
    :parameterName "lat" .
:RL_lng_RI a :VariableRestInputParameter ;
    :fromLogicalInput :RL_Location_RLI ;
    :fromDataProperty :longitude ;
    :parameterName "lng" .
:RL_Location_RLI a :RootInputParameter ; :type :Location .
:RL_Place_RLO a :RootOutputParameter ; :type :Place ;
    :rootOutputOf :RegionLookup ;
    :rootOutputXPath "/" ;
    :toOutput :RL_name_RO, :RL_Country_LO .
:RL_name_RO a :RestOutputParameter ;
    :restOutputOf :RegionLookup ;
    :fromDataProperty :name ;
    :restOutputXPath "name" .
:RL_Country_LO a :SubOutputParameter ; :type :Country ;
    :fromObjectProperty :inCountry ;
    :fromLogicalOutput :RL_Place_RLO ;
    :toOutput :RL_countryName_RO, :RL_countryId_RO .
:RL_countryName_RO a :RestOutputParameter ;
    :restOutputOf :RegionLookup ;
    :fromDataProperty :name ;
    :restOutputXPath "country/name" .
:RL_countryId_RO a :RestOutputParameter ;
    :restOutputOf :RegionLookup ;
    :fromDataProperty :id ;
    :restOutputXPath "country/id" .
:RL_IORel a :InputOutputRelation ;
    :subject :RL_Place_RLO ; :predicate :location ; :object :RL_Location_RLI .
"""

TABLE_XML = (b"<resp><name>beirut</name>"
             b"<country><name>Lebanon</name><id>LB</id></country></resp>")


@pytest.fixture(scope="module")
def region():
    graph = saturate(V.base_graph().add_all(parse_document(REGION_SERVICE)))
    registry, reports = extract_registry(graph)
    assert all(r.ok for r in reports), [r.render() for r in reports]
    return registry.get(iri("RegionLookup")), graph


def region_result(region):
    descriptor, graph = region
    session = Session("tbl")
    input_individual = session.fresh()
    input_graph = Graph([
        Triple(input_individual, V.TYPE, iri("Location")),
        Triple(input_individual, iri("latitude"), Literal("33.88894", "decimal")),
        Triple(input_individual, iri("longitude"), Literal("35.49442", "decimal")),
    ])
    doc = parse_xml(TABLE_XML)
    return build_outputs(descriptor, doc, input_individual, input_graph,
                         session, graph), input_individual


def test_region_output_reproduces_expected_triples(region):
    result, input_individual = region_result(region)
    g = result.graph
    assert len(result.roots) == 1
    root = result.roots[0]
    assert Triple(root, V.TYPE, iri("Place")) in g
    assert Triple(root, iri("name"), Literal("beirut")) in g
    countries = [o for o in g.objects(root, iri("inCountry"))]
    assert len(countries) == 1
    country = countries[0]
    assert Triple(country, V.TYPE, iri("Country")) in g
    assert Triple(country, iri("name"), Literal("Lebanon")) in g
    assert Triple(country, iri("id"), Literal("LB")) in g
    assert Triple(root, iri("location"), input_individual) in g
    assert Triple(input_individual, iri("latitude"),
                  Literal("33.88894", "decimal")) in g
    assert Triple(input_individual, iri("longitude"),
                  Literal("35.49442", "decimal")) in g
    assert not result.warnings


def test_operator_output(registry, fixtures_graph):
    descriptor = registry.get(iri("GetOperatorService"))
    session = Session("op")
    phone = session.fresh()
    input_graph = Graph([Triple(phone, V.TYPE, iri("PhoneNumber")),
                         Triple(phone, iri("msisdn"), Literal("03123456"))])
    result = build_outputs(descriptor, parse_xml(b"<Operator>Alfa</Operator>"),
                           phone, input_graph, session, fixtures_graph)
    assert len(result.roots) == 1
    root = result.roots[0]
    assert Triple(root, V.TYPE, iri("ServiceProvider")) in result.graph
    assert Triple(root, iri("providerName"), Literal("Alfa")) in result.graph
    assert Triple(root, iri("providerOf"), phone) in result.graph


def test_root_count_law(registry, fixtures_graph):
    descriptor = registry.get(iri("GeoNamesSearch"))
    body = (b"<geonames>" + b"".join(
        b"<geoname><name>x%d</name><lat>1</lat><lng>2</lng>"
        b"<countryName>C</countryName><countryId>I</countryId></geoname>"
        % i for i in range(5)) + b"</geonames>")
    session = Session("law")
    seed = session.fresh()
    result = build_outputs(descriptor, parse_xml(body), seed, Graph(),
                           session, fixtures_graph)
    assert len(result.roots) == 5
    # linkage law: one relation link per root
    for root in result.roots:
        assert result.graph.objects(root, iri("relatedTo")) == [seed]


def test_missing_path_warns_and_omits(registry, fixtures_graph):
    descriptor = registry.get(iri("GeoNamesSearch"))
    body = (b"<geonames><geoname><name>x</name><lat>1</lat>"
            b"<countryName>C</countryName><countryId>I</countryId>"
            b"</geoname></geonames>")  # no lng
    session = Session("warn")
    result = build_outputs(descriptor, parse_xml(body), session.fresh(),
                           Graph(), session, fixtures_graph)
    root = result.roots[0]
    assert result.graph.objects(root, iri("longitude")) == []
    assert any("lng" in w for w in result.warnings)


def test_multiple_matches_take_first_and_warn(registry, fixtures_graph):
    descriptor = registry.get(iri("GeoNamesSearch"))
    body = (b"<geonames><geoname><name>x</name><lat>1</lat><lat>9</lat>"
            b"<lng>2</lng><countryName>C</countryName><countryId>I</countryId>"
            b"</geoname></geonames>")
    session = Session("multi")
    result = build_outputs(descriptor, parse_xml(body), session.fresh(),
                           Graph(), session, fixtures_graph)
    root = result.roots[0]
    assert result.graph.objects(root, iri("latitude")) \
        == [Literal("1", "decimal")]
    assert any("2 nodes" in w for w in result.warnings)


def test_inverted_links_reverse_direction(registry, fixtures_graph):
    descriptor = registry.get(iri("GetOperatorService"))
    session = Session("inv")
    phone = session.fresh()
    result = build_outputs(descriptor, parse_xml(b"<Operator>Alfa</Operator>"),
                           phone, Graph(), session, fixtures_graph,
                           invert_links=True)
    root = result.roots[0]
    assert Triple(phone, iri("providerOf"), root) in result.graph


# -- forms ---------------------------------------------------------------


def test_form_spec_get_operator(registry, fixtures_graph):
    spec = form_spec_for(registry.get(iri("GetOperatorService")),
                         fixtures_graph)
    assert len(spec.fields) == 1
    field = spec.fields[0]
    assert field.label == "MSISDN"
    assert field.value_type == "string"
    assert field.mandatory and field.path_labels == ()


def test_form_spec_geonames(registry, fixtures_graph):
    spec = form_spec_for(registry.get(iri("GeoNamesSearch")), fixtures_graph)
    assert len(spec.fields) == 1
    assert spec.fields[0].label == "name"


def test_form_spec_nested_inputs_carry_path_labels(region):
    descriptor, graph = region
    spec = form_spec_for(descriptor, graph)
    assert [f.label for f in spec.fields] == ["latitude", "longitude"]
    assert all(f.value_type == "decimal" for f in spec.fields)


# -- URLs ------------------------------------------------------------------


def test_build_url_golden(registry, fixtures_graph):
    descriptor = registry.get(iri("GetOperatorService"))
    url = build_url(descriptor, [Binding(iri("GO_number_RI"), "03123456")],
                    fixtures_graph)
    assert url == "http://127.0.0.1:7341/getOperator?n=03123456"


def test_build_url_static_params_first():
    text = REGION_SERVICE + """\
:RL_key_SI a :StaticRestInputParameter ;
    :restInputOf :RegionLookup ;
    :parameterName "apiKey" ;
    :parameterValue "21o2iu34oiu1234" .
"""
    graph = saturate(V.base_graph().add_all(parse_document(text)))
    registry, reports = extract_registry(graph)
    assert reports[0].ok
    d = registry.get(iri("RegionLookup"))
    url = build_url(d, [Binding(iri("RL_lat_RI"), "1"),
                        Binding(iri("RL_lng_RI"), "2")], graph)
    assert url == "http://127.0.0.1:7341/region?apiKey=21o2iu34oiu1234&lat=1&lng=2"


def test_build_url_includes_tree_embedded_statics():
    text = REGION_SERVICE + """\
:RL_fmt_SI a :StaticRestInputParameter ;
    :restInputOf :RegionLookup ;
    :fromLogicalInput :RL_Location_RLI ;
    :parameterName "fmt" ;
    :parameterValue "xml" .
"""
    graph = saturate(V.base_graph().add_all(parse_document(text)))
    registry, reports = extract_registry(graph)
    assert reports[0].ok, reports[0].render()
    d = registry.get(iri("RegionLookup"))
    url = build_url(d, [Binding(iri("RL_lat_RI"), "1"),
                        Binding(iri("RL_lng_RI"), "2")], graph)
    assert url == "http://127.0.0.1:7341/region?fmt=xml&lat=1&lng=2"


def test_build_url_percent_encoding(registry, fixtures_graph):
    descriptor = registry.get(iri("GeoNamesSearch"))
    url = build_url(descriptor, [Binding(iri("GNS_q_RI"), "a b&c")],
                    fixtures_graph)
    assert url.endswith("?q=a%20b%26c")


def test_build_url_appends_to_existing_query(region):
    descriptor, graph = region
    import copy
    d = copy.deepcopy(descriptor)
    d.endpoint = "http://127.0.0.1:7341/region?v=2"
    url = build_url(d, [Binding(iri("RL_lat_RI"), "1"),
                        Binding(iri("RL_lng_RI"), "2")], graph)
    assert url == "http://127.0.0.1:7341/region?v=2&lat=1&lng=2"


def test_build_url_missing_mandatory(registry, fixtures_graph):
    descriptor = registry.get(iri("GetOperatorService"))
    with pytest.raises(MissingMandatoryInput):
        build_url(descriptor, [], fixtures_graph)


def test_build_url_invalid_decimal(region):
    descriptor, graph = region
    with pytest.raises(InvalidValue):
        build_url(descriptor, [Binding(iri("RL_lat_RI"), "abc"),
                               Binding(iri("RL_lng_RI"), "2")], graph)


def test_url_determinism(registry, fixtures_graph):
    descriptor = registry.get(iri("GetOperatorService"))
    bindings = [Binding(iri("GO_number_RI"), "03123456")]
    urls = {build_url(descriptor, bindings, fixtures_graph) for _ in range(10)}
    assert len(urls) == 1


# -- plan execution -----------------------------------------------------------


OPERATOR_XML = b"<Operator>Alfa</Operator>"
SIGNAL_XML = (b"<measurements>"
              b"<measurement><provider>Alfa</provider><lat>33.893</lat>"
              b"<lng>35.501</lng><strengthDbm>-71</strengthDbm></measurement>"
              b"<measurement><provider>Alfa</provider><lat>33.888</lat>"
              b"<lng>35.495</lng><strengthDbm>-64</strengthDbm></measurement>"
              b"</measurements>")


def fake_transport():
    def handler(url):
        if "/getOperator" in url:
            return TransportResponse(200, "text/xml", OPERATOR_XML)
        if "/signal" in url:
            return TransportResponse(200, "text/xml", SIGNAL_XML)
        if "/reverseLookup" in url:
            return TransportResponse(200, "application/json",
                                     b'{"name":"Jad Aoun","phone":"03123456"}')
        raise AssertionError(url)
    return FakeTransport(handler=handler)


def test_single_stage_plan_equals_direct_composition(registry, fixtures_graph):
    plan = parse_query(fixtures_graph, "find the provider of this phone number")
    transport = fake_transport()
    result = execute_plan(registry, plan,
                          [Binding(iri("GO_number_RI"), "03123456")],
                          transport, "one")
    assert transport.requests == ["http://127.0.0.1:7341/getOperator?n=03123456"]
    assert len(result.roots) == 1
    root = result.roots[0]
    assert Triple(root, V.TYPE, iri("ServiceProvider")) in result.graph
    assert result.graph.objects(root, iri("providerOf")) \
        == [result.input_individual]


def test_mashup_fans_out_per_root(registry, fixtures_graph):
    plan = parse_query(
        fixtures_graph,
        "find the signal strength of the provider of this phone number")
    transport = fake_transport()
    result = execute_plan(registry, plan,
                          [Binding(iri("GO_number_RI"), "03123456")],
                          transport, "two")
    assert len(transport.requests) == 2  # one stage-0 root, one invocation
    assert transport.requests[1].endswith("/signal?provider=Alfa")
    assert len(result.roots) == 2
    providers = {o for r in result.roots
                 for o in result.graph.objects(r, iri("signalStrengthMeasurementOf"))}
    assert len(providers) == 1
    provider = providers.pop()
    assert result.graph.objects(provider, iri("providerOf")) \
        == [result.input_individual]


def test_json_service_roundtrip(registry, fixtures_graph):
    plan = parse_query(fixtures_graph, "find the owner of this phone number")
    result = execute_plan(registry, plan,
                          [Binding(iri("TC_phone_RI"), "03123456")],
                          fake_transport(), "json")
    root = result.roots[0]
    assert Triple(root, V.TYPE, iri("Person")) in result.graph
    assert result.graph.objects(root, iri("name")) == [Literal("Jad Aoun")]


def test_session_isolation(registry, fixtures_graph):
    plan = parse_query(fixtures_graph, "find the provider of this phone number")
    bindings = [Binding(iri("GO_number_RI"), "03123456")]
    r1 = execute_plan(registry, plan, bindings, fake_transport(), "s1")
    r2 = execute_plan(registry, plan, bindings, fake_transport(), "s2")
    ids1 = {t.s.value for t in r1.graph if isinstance(t.s, Iri)}
    ids2 = {t.s.value for t in r2.graph if isinstance(t.s, Iri)}
    assert ids1 and ids2 and not (ids1 & ids2)


def test_chain_binding_error(registry, fixtures_graph):
    # place search output carries no providerName: stage 1 cannot bind
    plan = parse_query(fixtures_graph,
                       "find the signal strength of places related to this place")
    geoxml = (b"<geonames><geoname><name>x</name><lat>1</lat><lng>2</lng>"
              b"<countryName>C</countryName><countryId>I</countryId>"
              b"</geoname></geonames>")
    transport = FakeTransport(handler=lambda url: TransportResponse(
        200, "text/xml", geoxml))
    with pytest.raises(ChainBindingError) as err:
        execute_plan(registry, plan, [Binding(iri("GNS_q_RI"), "x")],
                     transport, "chain")
    assert err.value.stage == 1


def test_transport_error_on_http_failure(registry, fixtures_graph):
    plan = parse_query(fixtures_graph, "find the provider of this phone number")
    transport = FakeTransport(handler=lambda url: TransportResponse(
        500, "text/plain", b"boom"))
    with pytest.raises(TransportError) as err:
        execute_plan(registry, plan, [Binding(iri("GO_number_RI"), "03123456")],
                     transport, "err")
    assert err.value.status == 500


def test_json_and_xml_responses_build_equal_graphs(registry, fixtures_graph):
    descriptor = registry.get(iri("TrueCallerReverseLookup"))
    from smartmash.xpathlite import json_to_xml

    def run(doc):
        session = Session("eq")
        phone = session.fresh()
        return build_outputs(descriptor, doc, phone, Graph(), session,
                             fixtures_graph)

    via_json = run(json_to_xml(b'{"name":"Jad Aoun","phone":"03123456"}'))
    via_xml = run(parse_xml(b"<resp><name>Jad Aoun</name>"
                            b"<phone>03123456</phone></resp>"))
    assert via_json.graph == via_xml.graph  # same session ids, same triples
    assert via_json.roots == via_xml.roots


def test_provenance_of_literals(registry, fixtures_graph):
    plan = parse_query(
        fixtures_graph,
        "find the signal strength of the provider of this phone number")
    result = execute_plan(registry, plan,
                          [Binding(iri("GO_number_RI"), "03123456")],
                          fake_transport(), "prov")
    allowed = set()
    for service in ("GetOperatorService", "SignalMeasurementService"):
        for node in registry.get(iri(service)).rest_outputs:
            allowed.add(node.from_data_property)
    allowed.add(iri("msisdn"))  # the seed binding's data property
    for t in result.graph:
        if isinstance(t.o, Literal):
            assert t.p in allowed, t

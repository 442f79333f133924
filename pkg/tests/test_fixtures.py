from __future__ import annotations

from pathlib import Path

import requests

from smartmash import vocab as V
from smartmash.execute import Binding, HttpTransport, execute_plan
from smartmash.fixtures import (measurement_rows, ontology_graph,
                                ontology_text, rewrite_endpoints)
from smartmash.gateway import build_snapshot
from smartmash.query import parse_query

from conftest import iri


def _get(server, path):
    return requests.get(server.base_url + path, timeout=5)


def test_geo_search_contains_reference_record(fixture_server):
    r = _get(fixture_server, "/geoSearch?q=beirut")
    assert r.status_code == 200
    assert b"<lat>33.88894</lat>" in r.content
    assert b"<lng>35.49442</lng>" in r.content
    assert r.content.count(b"<geoname>") >= 1


def test_get_operator_prefix_map(fixture_server):
    assert _get(fixture_server, "/getOperator?n=03123456").content \
        == b"<Operator>Alfa</Operator>"
    assert _get(fixture_server, "/getOperator?n=70111222").content \
        == b"<Operator>Touch</Operator>"
    assert _get(fixture_server, "/getOperator?n=99999999").status_code == 404


def test_missing_parameter_is_400(fixture_server):
    assert _get(fixture_server, "/getOperator").status_code == 400
    assert _get(fixture_server, "/geoSearch").status_code == 400
    assert _get(fixture_server, "/signal").status_code == 400
    assert _get(fixture_server, "/reverseLookup").status_code == 400


def test_unknown_path_is_404(fixture_server):
    assert _get(fixture_server, "/nope").status_code == 404


def test_signal_filters_by_provider(fixture_server):
    body = _get(fixture_server, "/signal?provider=Alfa").content
    assert body.count(b"<measurement>") >= 3
    assert b"Touch" not in body


def test_reverse_lookup_is_json(fixture_server):
    r = _get(fixture_server, "/reverseLookup?phone=03123456")
    assert "json" in r.headers["Content-Type"]
    assert r.json() == {"name": "Jad Aoun", "phone": "03123456"}


def test_responses_are_deterministic(fixture_server):
    for path in ("/geoSearch?q=beirut", "/getOperator?n=03123456",
                 "/signal?provider=Touch", "/reverseLookup?phone=70111222"):
        assert _get(fixture_server, path).content \
            == _get(fixture_server, path).content


def test_measurements_have_three_rows_per_provider():
    rows = measurement_rows()
    for provider in ("Alfa", "Touch"):
        assert sum(1 for r in rows if r["provider"] == provider) >= 3


def test_repo_copy_matches_package_data():
    repo_copy = Path(__file__).resolve().parent.parent / "fixtures" / "services.ttl"
    assert repo_copy.read_text(encoding="utf-8") == ontology_text()


def test_port_in_use(fixture_server):
    import pytest

    from smartmash.errors import PortInUse
    from smartmash.fixtures import serve_fixtures

    with pytest.raises(PortInUse):
        serve_fixtures(port=fixture_server.port)


def test_endpoint_rewrite(fixtures_raw, fixture_server):
    rewritten = rewrite_endpoints(fixtures_raw, fixture_server.base_url)
    endpoints = [t.o.lexical for t in rewritten.match(None, V.ENDPOINT, None)]
    assert endpoints
    assert all(e.startswith(fixture_server.base_url) for e in endpoints)
    assert len(rewritten) == len(fixtures_raw)


def _live_registry(fixture_server):
    raw = rewrite_endpoints(ontology_graph(), fixture_server.base_url)
    return build_snapshot(raw)


def test_ontology_dataset_coherence(fixture_server):
    """Every fixture descriptor's paths address its live response shape."""
    snapshot = _live_registry(fixture_server)
    transport = HttpTransport()
    cases = [
        ("find places related to this place",
         [Binding(iri("GNS_q_RI"), "beirut")],
         iri("Place"), iri("name")),
        ("find the provider of this phone number",
         [Binding(iri("GO_number_RI"), "03123456")],
         iri("ServiceProvider"), iri("providerName")),
        ("find the signal strength of this service provider",
         [Binding(iri("SM_provider_RI"), "Alfa")],
         iri("SignalStrengthMeasurement"), iri("strengthDbm")),
        ("find the owner of this phone number",
         [Binding(iri("TC_phone_RI"), "03123456")],
         iri("Person"), iri("name")),
    ]
    for text, bindings, expected_type, expected_literal in cases:
        plan = parse_query(snapshot.saturated, text)
        result = execute_plan(snapshot.registry, plan, bindings, transport,
                              f"coh-{expected_type.local_name}")
        assert result.roots, text
        for root in result.roots:
            assert result.graph.has(root, V.TYPE, expected_type)
            assert result.graph.objects(root, expected_literal), \
                (text, expected_literal)
        assert not result.warnings, (text, result.warnings)

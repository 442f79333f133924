from __future__ import annotations

import pytest

from smartmash import vocab as V
from smartmash.errors import AmbiguousLabel, UnknownLabel
from smartmash.graph import Graph
from smartmash.labels import CLASS, PREDICATE, label_of, resolve_label
from smartmash.reason import saturate
from smartmash.terms import Literal, Triple

from conftest import iri


def test_resolves_predicate_label(fixtures_graph):
    assert resolve_label(fixtures_graph, "provider of", PREDICATE) == iri("providerOf")


def test_plural_fold(fixtures_graph):
    assert resolve_label(fixtures_graph, "places", CLASS) == iri("Place")


def test_exact_match_wins_over_fold(fixtures_graph):
    # "owns" ends with s; the exact tier must not strip it to "own"
    assert resolve_label(fixtures_graph, "owns", PREDICATE) == iri("owns")


def test_case_and_whitespace_normalization(fixtures_graph):
    assert resolve_label(fixtures_graph, "  Provider   OF ", PREDICATE) \
        == iri("providerOf")
    assert resolve_label(fixtures_graph, "msisdn", PREDICATE) == iri("msisdn")


def test_unknown_label(fixtures_graph):
    with pytest.raises(UnknownLabel):
        resolve_label(fixtures_graph, "warp drive", CLASS)


def test_kind_separation(fixtures_graph):
    # "phone number" names a class and, separately, an object property
    assert resolve_label(fixtures_graph, "phone number", CLASS) == iri("PhoneNumber")
    assert resolve_label(fixtures_graph, "phone number", PREDICATE) \
        == iri("hasPhoneNumber")


def test_ambiguous_label():
    g = Graph()
    for name in ("A", "B"):
        g.add(Triple(iri(name), V.TYPE, V.DOMAIN_CLASS))
        g.add(Triple(iri(name), V.LABEL, Literal("thing")))
    s = saturate(g)
    with pytest.raises(AmbiguousLabel):
        resolve_label(s, "thing", CLASS)


def test_deterministic(fixtures_graph):
    results = {resolve_label(fixtures_graph, "signal strength of", PREDICATE)
               for _ in range(20)}
    assert results == {iri("signalStrengthMeasurementOf")}


def test_label_of_falls_back_to_local_name(fixtures_graph):
    assert label_of(fixtures_graph, iri("msisdn")) == "MSISDN"
    assert label_of(fixtures_graph, iri("NoSuchTerm")) == "NoSuchTerm"

from __future__ import annotations

import random

import pytest

from smartmash import vocab as V
from smartmash.fixtures import ontology_text, serve_fixtures
from smartmash.graph import Graph
from smartmash.model import extract_registry
from smartmash.reason import saturate
from smartmash.terms import Iri, Literal, Triple
from smartmash.turtle import parse_document


def iri(local: str) -> Iri:
    return Iri(V.NS + local)


@pytest.fixture(scope="session")
def fixtures_text() -> str:
    return ontology_text()


@pytest.fixture(scope="session")
def fixtures_raw(fixtures_text) -> Graph:
    return parse_document(fixtures_text)


@pytest.fixture(scope="session")
def fixtures_graph(fixtures_raw) -> Graph:
    return saturate(V.base_graph().add_all(fixtures_raw))


@pytest.fixture(scope="session")
def registry(fixtures_graph):
    reg, reports = extract_registry(fixtures_graph)
    assert all(r.ok for r in reports)
    return reg


@pytest.fixture(scope="session")
def fixture_server():
    with serve_fixtures(port=0) as server:
        yield server


# -- random generators -------------------------------------------------------

def random_suite_graph(rng: random.Random, max_triples: int = 1000) -> Graph:
    """Instance data over a sparse random class/property hierarchy."""
    classes = [Iri(f"http://rnd.example/C{i}") for i in range(20)]
    props = [Iri(f"http://rnd.example/p{i}") for i in range(12)]
    inds = [Iri(f"http://rnd.example/i{i}") for i in range(40)]
    g = Graph()
    for i in range(1, len(classes)):
        if rng.random() < 0.6:
            g.add(Triple(classes[i], V.SUB_CLASS_OF, classes[rng.randrange(i)]))
    for i in range(1, len(props)):
        if rng.random() < 0.3:
            g.add(Triple(props[i], V.SUB_PROPERTY_OF, props[rng.randrange(i)]))
    for _ in range(2):
        a, b = rng.sample(props, 2)
        g.add(Triple(a, V.INVERSE_OF, b))
    a, b = rng.sample(props, 2)
    g.add(Triple(a, V.EQUIVALENT_PROPERTY, b))
    g.add(Triple(rng.choice(props), V.TYPE, V.TRANSITIVE_PROPERTY))
    n = min(max_triples, int(max_triples * rng.random() ** 2) + 20)
    while len(g) < n:
        r = rng.random()
        if r < 0.25:
            g.add(Triple(rng.choice(inds), V.TYPE, rng.choice(classes)))
        elif r < 0.85:
            g.add(Triple(rng.choice(inds), rng.choice(props), rng.choice(inds)))
        else:
            g.add(Triple(rng.choice(inds), rng.choice(props),
                         Literal(f"v{rng.randint(0, 30)}")))
    return g


def random_plain_graph(rng: random.Random, n_triples: int,
                       blanks: int = 0) -> Graph:
    """Arbitrary triples (no reasoning structure), for index/serializer tests."""
    g = Graph()
    iris = [Iri(f"http://rnd.example/n{i}") for i in range(30)]
    preds = [Iri(f"http://rnd.example/p{i}") for i in range(10)]
    bnodes = [g.new_blank() for _ in range(blanks)]
    subjects = iris + bnodes

    def rand_literal():
        kind = rng.random()
        if kind < 0.5:
            text = "".join(rng.choice("ab cd\"\\\n\té€") for _ in range(rng.randint(0, 8)))
            lang = rng.choice([None, None, "en", "fr-CA"])
            return Literal(text, "string", lang)
        if kind < 0.8:
            whole = rng.randint(-999, 999)
            if rng.random() < 0.5:
                return Literal(str(whole), "decimal")
            return Literal(f"{whole}.{rng.randint(0, 99)}", "decimal")
        return Literal(rng.choice(["true", "false"]), "boolean")

    while len(g) < n_triples:
        s = rng.choice(subjects)
        p = rng.choice(preds)
        r = rng.random()
        if r < 0.5:
            o = rng.choice(iris)
        elif r < 0.7 and bnodes:
            o = rng.choice(bnodes)
        else:
            o = rand_literal()
        g.add(Triple(s, p, o))
    return g

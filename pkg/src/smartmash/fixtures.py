"""Offline stand-ins for the remote services the registry describes.

One small HTTP server answers all four endpoints deterministically from
datasets embedded below, so every query, mashup and test runs without
internet access. The matching ontology ships as package data
(data/services.ttl) and points at 127.0.0.1:7341 by default.
"""

from __future__ import annotations

import csv
import io
import json
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from urllib.parse import parse_qs, urlparse
from xml.sax.saxutils import escape

from .errors import PortInUse
from .graph import Graph
from .terms import Literal, Triple
from .turtle import parse_document
from . import vocab as V

DEFAULT_PORT = 7341
DEFAULT_BASE_URL = f"http://127.0.0.1:{DEFAULT_PORT}"


@dataclass(frozen=True)
class GeoRecord:
    name: str
    country_name: str
    country_id: str
    lat: str
    lng: str


# Beirut's coordinates are the reference record; the other rows exist to
# give list-shaped responses something to list.
GEO_RECORDS = (
    GeoRecord("beirut", "Lebanon", "LB", "33.88894", "35.49442"),
    GeoRecord("tripoli", "Lebanon", "LB", "34.43667", "35.84972"),
    GeoRecord("byblos", "Lebanon", "LB", "34.12306", "35.65195"),
)

OPERATOR_MAP = {"03": "Alfa", "70": "Touch"}

MEASUREMENTS_CSV = """\
provider,lat,lng,strengthDbm
Alfa,33.89300,35.50100,-71
Alfa,33.88800,35.49500,-64
Alfa,33.90100,35.51000,-58
Touch,33.88500,35.49000,-66
Touch,33.89500,35.50500,-73
Touch,33.87900,35.48200,-61
"""

REVERSE_LOOKUP = {
    "03123456": "Jad Aoun",
    "70111222": "Lina Haddad",
}


def measurement_rows() -> list[dict]:
    return list(csv.DictReader(io.StringIO(MEASUREMENTS_CSV)))


def ontology_text() -> str:
    return resources.files("smartmash").joinpath("data/services.ttl") \
        .read_text(encoding="utf-8")


def ontology_graph() -> Graph:
    return parse_document(ontology_text())


def rewrite_endpoints(graph: Graph, base_url: str) -> Graph:
    """Re-point fixture endpoints at a server bound to a different port."""
    if base_url == DEFAULT_BASE_URL:
        return graph
    out = Graph()
    for t in graph:
        if t.p == V.ENDPOINT and isinstance(t.o, Literal) \
                and t.o.lexical.startswith(DEFAULT_BASE_URL):
            rest = t.o.lexical[len(DEFAULT_BASE_URL):]
            t = Triple(t.s, t.p, Literal(base_url + rest, t.o.datatype))
        out.add(t)
    return out


# -- responses ---------------------------------------------------------------

def geo_search_body(q: str) -> bytes:
    """Rows whose name contains the query, then rows sharing their country."""
    needle = q.strip().lower()
    named = [r for r in GEO_RECORDS if needle in r.name.lower()]
    countries = {r.country_name for r in named}
    related = [r for r in GEO_RECORDS
               if r not in named and r.country_name in countries]
    parts = ["<geonames>"]
    for r in named + related:
        parts.append(
            "<geoname>"
            f"<name>{escape(r.name)}</name>"
            f"<lat>{r.lat}</lat>"
            f"<lng>{r.lng}</lng>"
            f"<countryName>{escape(r.country_name)}</countryName>"
            f"<countryId>{escape(r.country_id)}</countryId>"
            "</geoname>")
    parts.append("</geonames>")
    return "".join(parts).encode()


def get_operator_body(msisdn: str) -> bytes | None:
    provider = OPERATOR_MAP.get(msisdn.strip()[:2])
    if provider is None:
        return None
    return f"<Operator>{escape(provider)}</Operator>".encode()


def signal_body(provider: str) -> bytes:
    rows = [r for r in measurement_rows()
            if r["provider"].lower() == provider.strip().lower()]
    parts = ["<measurements>"]
    for r in rows:
        parts.append(
            "<measurement>"
            f"<provider>{escape(r['provider'])}</provider>"
            f"<lat>{r['lat']}</lat>"
            f"<lng>{r['lng']}</lng>"
            f"<strengthDbm>{r['strengthDbm']}</strengthDbm>"
            "</measurement>")
    parts.append("</measurements>")
    return "".join(parts).encode()


def reverse_lookup_body(phone: str) -> bytes | None:
    name = REVERSE_LOOKUP.get(phone.strip())
    if name is None:
        return None
    return json.dumps({"name": name, "phone": phone.strip()},
                      sort_keys=True).encode()


class _Handler(BaseHTTPRequestHandler):
    def log_message(self, *args):  # keep test output quiet
        pass

    def _send(self, status: int, content_type: str, body: bytes):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _param(self, query: dict, name: str) -> str | None:
        values = query.get(name)
        return values[0] if values else None

    def do_GET(self):
        url = urlparse(self.path)
        query = parse_qs(url.query)
        if url.path == "/geoSearch":
            q = self._param(query, "q")
            if q is None:
                return self._send(400, "text/plain", b"missing parameter: q")
            return self._send(200, "text/xml", geo_search_body(q))
        if url.path == "/getOperator":
            n = self._param(query, "n")
            if n is None:
                return self._send(400, "text/plain", b"missing parameter: n")
            body = get_operator_body(n)
            if body is None:
                return self._send(404, "text/plain", b"unknown prefix")
            return self._send(200, "text/xml", body)
        if url.path == "/signal":
            provider = self._param(query, "provider")
            if provider is None:
                return self._send(400, "text/plain",
                                  b"missing parameter: provider")
            return self._send(200, "text/xml", signal_body(provider))
        if url.path == "/reverseLookup":
            phone = self._param(query, "phone")
            if phone is None:
                return self._send(400, "text/plain",
                                  b"missing parameter: phone")
            body = reverse_lookup_body(phone)
            if body is None:
                return self._send(404, "application/json",
                                  b'{"error": "unknown phone"}')
            return self._send(200, "application/json", body)
        self._send(404, "text/plain", b"no such endpoint")


@dataclass
class FixtureServer:
    server: ThreadingHTTPServer
    thread: threading.Thread

    @property
    def port(self) -> int:
        return self.server.server_address[1]

    @property
    def base_url(self) -> str:
        return f"http://127.0.0.1:{self.port}"

    def close(self):
        self.server.shutdown()
        self.server.server_close()
        self.thread.join(timeout=5)

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def serve_fixtures(port: int = DEFAULT_PORT) -> FixtureServer:
    """Start the fixture server; port 0 picks a free ephemeral port."""
    try:
        server = ThreadingHTTPServer(("127.0.0.1", port), _Handler)
    except OSError as exc:
        raise PortInUse(f"cannot bind fixture server to port {port}: {exc}") \
            from exc
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return FixtureServer(server, thread)

"""HTTP API over analysis, execution, registration and validation.

The gateway owns the registry lifecycle: requests read one immutable
snapshot for their whole duration, and a successful registration builds a
new snapshot (parse, merge, re-saturate, re-validate everything) and swaps
it in atomically. A failed registration leaves the old snapshot untouched.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import vocab as V
from .errors import (AmbiguousLabel, ChainBindingError, EmptyPlan, InvalidValue,
                     MissingFind, MissingMandatoryInput, MissingThis,
                     NoServiceFound, ParseError, ResponseParseError, SmartError,
                     TransportError, UnknownLabel)
from .execute import (Binding, HttpTransport, ResultGraph, Transport,
                      execute_plan, form_spec_for)
from .graph import Graph
from .labels import label_of
from .match import list_candidates, match_service
from .model import ServiceRegistry, extract_registry
from .query import parse_query
from .reason import saturate
from .terms import Iri, Literal
from .turtle import parse_document, serialize

_STATUS = {
    ParseError: 400,
    UnknownLabel: 400,
    AmbiguousLabel: 400,
    MissingFind: 400,
    MissingThis: 400,
    EmptyPlan: 400,
    MissingMandatoryInput: 400,
    InvalidValue: 400,
    ChainBindingError: 400,
    NoServiceFound: 404,
    TransportError: 502,
    ResponseParseError: 502,
}


@dataclass(frozen=True)
class Snapshot:
    raw: Graph            # asserted triples only, as registered
    saturated: Graph
    registry: ServiceRegistry
    reports: list


def build_snapshot(raw: Graph) -> Snapshot:
    saturated = saturate(V.base_graph().add_all(raw))
    registry, reports = extract_registry(saturated)
    return Snapshot(raw, saturated, registry, reports)


@dataclass
class AppState:
    snapshot: Snapshot
    transport: Transport = field(default_factory=HttpTransport)
    ontology_path: Path | None = None
    write_lock: threading.Lock = field(default_factory=threading.Lock)


def state_from_turtle(text: str, transport: Transport | None = None,
                      ontology_path: Path | None = None) -> AppState:
    state = AppState(build_snapshot(parse_document(text)))
    if transport is not None:
        state.transport = transport
    state.ontology_path = ontology_path
    return state


class AnalyzeRequest(BaseModel):
    query: str
    debug: bool = False


class ExecuteRequest(BaseModel):
    query: str
    bindings: dict[str, str] = {}


def _plan_payload(graph: Graph, plan) -> dict:
    def type_info(t: Iri | None):
        if t is None:
            return None
        return {"iri": t.value, "label": label_of(graph, t)}

    return {
        "seedType": type_info(plan.seed_type),
        "stages": [{
            "inputType": type_info(q.input_type),
            "predicate": {"iri": q.predicate.value,
                          "label": label_of(graph, q.predicate)},
            "outputType": type_info(q.output_type),
        } for q in plan.stages],
    }


def result_to_response(result: ResultGraph, graph: Graph) -> dict:
    """ResultGraph serialized for clients: nodes, roots, geo points."""
    g = result.graph
    node_ids = sorted({t.s for t in g if isinstance(t.s, Iri)},
                      key=lambda i: i.value)
    nodes = []
    geo = []
    for node in node_ids:
        types = sorted((o.value for o in g.objects(node, V.TYPE)
                        if isinstance(o, Iri)))
        literals: dict[str, list[str]] = {}
        links = []
        for t in sorted(g.match(s=node), key=lambda t: t.key()):
            if isinstance(t.o, Literal):
                literals.setdefault(t.p.value, []).append(t.o.lexical)
            elif t.p != V.TYPE and isinstance(t.o, Iri):
                links.append({"predicate": t.p.value, "targetId": t.o.value})
        nodes.append({
            "id": node.value,
            "type": types[0] if types else None,
            "typeLabel": label_of(graph, Iri(types[0])) if types else None,
            "literals": literals,
            "links": links,
        })
        lat = literals.get(V.NS + "latitude")
        lng = literals.get(V.NS + "longitude")
        if lat and lng:
            try:
                point = {"lat": float(lat[0]), "lng": float(lng[0])}
            except ValueError:
                continue
            name = literals.get(V.NS + "name")
            label = name[0] if name else node.local_name
            geo.append({"id": node.value, "label": label, **point})
    return {
        "nodes": nodes,
        "roots": [r.value for r in result.roots],
        "geo": geo,
        "warnings": list(dict.fromkeys(result.warnings)),
    }


def create_app(state: AppState, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="smartmash gateway")

    @app.exception_handler(SmartError)
    async def smart_error_handler(request: Request, exc: SmartError):
        status = _STATUS.get(type(exc), 400)
        return JSONResponse(status_code=status, content={"error": exc.to_dict()})

    @app.get("/api/health")
    def health():
        snapshot = state.snapshot
        return {"status": "ok", "services": len(snapshot.registry)}

    @app.post("/api/analyze")
    def analyze(body: AnalyzeRequest):
        snapshot = state.snapshot
        graph = snapshot.saturated
        plan = parse_query(graph, body.query)
        matched = []
        for k, stage in enumerate(plan.stages):
            try:
                m = match_service(snapshot.registry, stage)
            except NoServiceFound as exc:
                # Analysis failures are client errors, even unmatched stages.
                return JSONResponse(status_code=400,
                                    content={"error": {**exc.to_dict(),
                                                       "stage": k}})
            descriptor = snapshot.registry.services[m.service]
            entry = {
                "stage": k,
                "serviceLabel": label_of(graph, m.service),
                **m.to_dict(),
            }
            if body.debug:
                entry["candidates"] = [c.to_dict()
                                       for c in list_candidates(
                                           snapshot.registry, stage)]
            matched.append(entry)
            if k == 0:
                form = form_spec_for(descriptor, graph)
        return {
            "plan": _plan_payload(graph, plan),
            "matchedServices": matched,
            "formSpec": form.to_dict(),
        }

    @app.post("/api/execute")
    def execute(body: ExecuteRequest):
        snapshot = state.snapshot
        plan = parse_query(snapshot.saturated, body.query)
        bindings = [Binding(Iri(param), value)
                    for param, value in sorted(body.bindings.items())]
        result = execute_plan(snapshot.registry, plan, bindings,
                              state.transport, uuid.uuid4().hex[:12])
        return result_to_response(result, snapshot.saturated)

    @app.get("/api/services")
    def services():
        snapshot = state.snapshot
        graph = snapshot.saturated
        out = []
        for report in snapshot.reports:
            descriptor = snapshot.registry.get(report.service)
            out.append({
                "service": report.service.value,
                "label": label_of(graph, report.service),
                "endpoint": descriptor.endpoint if descriptor else None,
                "registered": report.ok,
                "validation": report.to_dict(),
            })
        return {"services": out}

    @app.post("/api/services")
    async def register(request: Request):
        body = (await request.body()).decode("utf-8")
        addition = parse_document(body)  # 400 via ParseError on bad syntax
        with state.write_lock:
            merged = state.snapshot.raw.copy()
            merged.add_all(addition)
            candidate = build_snapshot(merged)
            failures = [r for r in candidate.reports if not r.ok]
            if failures:
                return JSONResponse(status_code=422, content={
                    "error": {"code": "validation_failed",
                              "message": "registration rejected; registry "
                                         "unchanged"},
                    "reports": [r.to_dict() for r in candidate.reports],
                })
            state.snapshot = candidate
            if state.ontology_path is not None:
                state.ontology_path.write_text(serialize(candidate.raw),
                                               encoding="utf-8")
        return {
            "registered": len(candidate.registry),
            "reports": [r.to_dict() for r in candidate.reports],
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="ui")
    return app

"""Command line entry points.

    smartmash serve --ontology PATH --port N [--fixtures]
    smartmash validate PATH
    smartmash query "TEXT" --bind paramIri=value ... [--ontology PATH | --fixtures]
    smartmash dump-registry [--ontology PATH | --fixtures]

SMART_ONTOLOGY in the environment overrides --ontology.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import uuid
from pathlib import Path

from . import fixtures as fx
from . import vocab as V
from .errors import SmartError
from .execute import Binding, HttpTransport, execute_plan
from .gateway import AppState, build_snapshot, create_app, result_to_response
from .graph import Graph
from .query import parse_query
from .terms import Iri
from .turtle import parse_document


def _ontology_path(args) -> Path | None:
    env = os.environ.get("SMART_ONTOLOGY")
    if env:
        return Path(env)
    if getattr(args, "ontology", None):
        return Path(args.ontology)
    return None


def _load_raw(args, fixture_base_url: str | None = None) -> Graph:
    path = _ontology_path(args)
    if path is not None:
        raw = parse_document(path.read_text(encoding="utf-8"))
    elif getattr(args, "fixtures", False):
        raw = fx.ontology_graph()
    else:
        raise SystemExit("error: no ontology given "
                         "(use --ontology, SMART_ONTOLOGY or --fixtures)")
    if fixture_base_url is not None:
        raw = fx.rewrite_endpoints(raw, fixture_base_url)
    return raw


def _maybe_fixture_server(args) -> fx.FixtureServer | None:
    if not getattr(args, "fixtures", False):
        return None
    return fx.serve_fixtures(args.fixtures_port)


def cmd_serve(args) -> int:
    import uvicorn

    server = _maybe_fixture_server(args)
    base = server.base_url if server else None
    raw = _load_raw(args, base)
    state = AppState(build_snapshot(raw), ontology_path=_ontology_path(args))
    static = Path(args.static_dir) if args.static_dir else None
    app = create_app(state, static_dir=static)
    n = len(state.snapshot.registry)
    print(f"registry loaded: {n} service(s)", flush=True)
    if server:
        print(f"fixture services on {server.base_url}", flush=True)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    finally:
        if server:
            server.close()
    return 0


def cmd_validate(args) -> int:
    raw = parse_document(Path(args.path).read_text(encoding="utf-8"))
    snapshot = build_snapshot(raw)
    for report in snapshot.reports:
        print(report.render())
    bad = [r for r in snapshot.reports if not r.ok]
    print(f"{len(snapshot.reports) - len(bad)} valid, {len(bad)} invalid")
    return 1 if bad else 0


def _parse_bindings(pairs: list[str]) -> list[Binding]:
    bindings = []
    for pair in pairs:
        if "=" not in pair:
            raise SystemExit(f"error: --bind expects paramIri=value, got {pair!r}")
        param, value = pair.split("=", 1)
        if not param.startswith(("http://", "https://", "urn:")):
            param = V.NS + param  # allow bare local names
        bindings.append(Binding(Iri(param), value))
    return bindings


def cmd_query(args) -> int:
    server = _maybe_fixture_server(args)
    try:
        raw = _load_raw(args, server.base_url if server else None)
        snapshot = build_snapshot(raw)
        plan = parse_query(snapshot.saturated, args.text)
        result = execute_plan(snapshot.registry, plan,
                              _parse_bindings(args.bind), HttpTransport(),
                              uuid.uuid4().hex[:12])
        payload = result_to_response(result, snapshot.saturated)
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    finally:
        if server:
            server.close()


def cmd_dump_registry(args) -> int:
    raw = _load_raw(args)
    snapshot = build_snapshot(raw)
    for report in snapshot.reports:
        descriptor = snapshot.registry.get(report.service)
        status = "ok" if report.ok else "INVALID"
        line = f"{report.service.value}  [{status}]"
        if descriptor:
            line += (f"  endpoint={descriptor.endpoint}"
                     f"  inputs={len(descriptor.variable_inputs)}"
                     f"  outputs={len(descriptor.rest_outputs)}"
                     f"  relations={len(descriptor.io_relations)}")
        print(line)
    print(f"{len(snapshot.registry)} registered service(s)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smartmash",
        description="semantic discovery and mashup execution for REST services")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_ontology_opts(p, with_fixtures=True):
        p.add_argument("--ontology", help="path to the service ontology (.ttl)")
        if with_fixtures:
            p.add_argument("--fixtures", action="store_true",
                           help="start the local fixture services and use "
                                "the bundled ontology unless --ontology is given")
            p.add_argument("--fixtures-port", type=int,
                           default=fx.DEFAULT_PORT,
                           help="fixture server port (0 = ephemeral)")

    serve = sub.add_parser("serve", help="run the HTTP gateway")
    add_ontology_opts(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--static-dir", help="directory of web UI assets to serve")
    serve.set_defaults(func=cmd_serve)

    validate = sub.add_parser("validate", help="validate a service ontology")
    validate.add_argument("path")
    validate.set_defaults(func=cmd_validate)

    query = sub.add_parser("query", help="run one query end to end")
    query.add_argument("text")
    query.add_argument("--bind", action="append", default=[],
                       metavar="paramIri=value")
    add_ontology_opts(query)
    query.set_defaults(func=cmd_query)

    dump = sub.add_parser("dump-registry", help="list registered services")
    add_ontology_opts(dump)
    dump.set_defaults(func=cmd_dump_registry)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SmartError as exc:
        print(f"error: {json.dumps(exc.to_dict())}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

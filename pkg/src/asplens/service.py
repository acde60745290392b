"""Read-only HTTP API over a workspace.

Every response is produced by the same canonical JSON writers the
command line uses, so the bytes match exactly. Responses carry an ETag
derived from the body; If-None-Match returns 304. POST /api/eval is
pure: it evaluates the posted fact file and changes no server state.
"""

import hashlib

from fastapi import FastAPI, Request, Response

from .hypergraph import hypergraph_to_json
from .layout import layout_to_json
from .model import MODEL_SCHEMA_VERSION, model_to_json, model_to_obj
from .parser import Diagnostic, literal_to_source, term_to_source
from .parser.jsonio import diagnostic_to_obj, dumps_canonical
from .scoring import evaluate_spec, facts_from_source, report_to_json, reports_to_json
from .workspace import DEFAULT_MIN_DEGREE, Workspace, parse_feature_tokens

CONSTRAINTS_SCHEMA_VERSION = "asplens.constraints/1"


def constraint_source(constraint) -> str:
    """Reconstructed rule text for search and display."""
    args = [constraint.id] + [term_to_source(t) for t in constraint.head_extra_args]
    head = f"{constraint.kind}({','.join(args)})"
    body = ", ".join(literal_to_source(l) for l in constraint.body)
    return f"{head} :- {body}." if body else f"{head}."


def _json_response(text: str, request: Request, status: int = 200) -> Response:
    body = text.encode()
    etag = '"' + hashlib.sha256(body).hexdigest() + '"'
    if request.headers.get("if-none-match") == etag:
        return Response(status_code=304, headers={"ETag": etag})
    return Response(
        content=body,
        status_code=status,
        media_type="application/json",
        headers={"ETag": etag},
    )


def _error(status: int, message: str, diagnostics: list[Diagnostic] = ()) -> Response:
    payload = {"detail": message}
    if diagnostics:
        payload["diagnostics"] = [diagnostic_to_obj(d) for d in diagnostics]
    return Response(
        content=dumps_canonical(payload).encode(),
        status_code=status,
        media_type="application/json",
    )


def create_app(workspace: Workspace) -> FastAPI:
    app = FastAPI(title="asplens", docs_url=None, redoc_url=None)
    model_obj = model_to_obj(workspace.cset)
    constraint_rows = [
        (c, obj, constraint_source(c).lower())
        for c, obj in zip(
            sorted(workspace.cset.constraints, key=lambda c: c.span.start),
            model_obj["constraints"],
        )
    ]

    def graph_params(request: Request):
        params = request.query_params
        kind = params.get("type", "soft")
        if kind not in ("hard", "soft"):
            return None, _error(400, "type must be hard or soft")
        try:
            feature_kinds = parse_feature_tokens(
                params.get("features", "predicates,variables")
            )
        except ValueError as e:
            return None, _error(400, str(e))
        raw_degree = params.get("min_degree", str(DEFAULT_MIN_DEGREE))
        try:
            min_degree = int(raw_degree)
        except ValueError:
            return None, _error(400, "min_degree must be an integer")
        if min_degree < 0:
            return None, _error(400, "min_degree must be non-negative")
        return (kind, feature_kinds, min_degree), None

    @app.get("/api/model")
    def get_model(request: Request) -> Response:
        return _json_response(model_to_json(workspace.cset), request)

    @app.get("/api/hypergraph")
    def get_hypergraph(request: Request) -> Response:
        params, err = graph_params(request)
        if err is not None:
            return err
        return _json_response(hypergraph_to_json(workspace.hypergraph(*params)), request)

    @app.get("/api/layout")
    def get_layout(request: Request) -> Response:
        params, err = graph_params(request)
        if err is not None:
            return err
        return _json_response(layout_to_json(workspace.layout(*params)), request)

    @app.get("/api/reports")
    def get_reports(request: Request) -> Response:
        return _json_response(reports_to_json(list(workspace.reports())), request)

    @app.get("/api/constraints")
    def get_constraints(request: Request) -> Response:
        query = request.query_params.get("q", "").lower()
        rows = [
            obj | {"source": constraint_source(c)}
            for c, obj, source in constraint_rows
            if query in c.id.lower() or query in source
        ]
        payload = {
            "schema_version": CONSTRAINTS_SCHEMA_VERSION,
            "model_schema_version": MODEL_SCHEMA_VERSION,
            "query": request.query_params.get("q", ""),
            "constraints": rows,
        }
        return _json_response(dumps_canonical(payload), request)

    @app.get("/api/constraints/{kind}/{id}")
    def get_constraint(kind: str, id: str, request: Request) -> Response:
        for c, obj, _ in constraint_rows:
            if c.kind == kind and c.id == id:
                payload = {
                    "schema_version": CONSTRAINTS_SCHEMA_VERSION,
                    "constraint": obj,
                    "source": constraint_source(c),
                }
                return _json_response(dumps_canonical(payload), request)
        return _error(404, f"unknown constraint {kind}:{id}")

    @app.post("/api/eval")
    async def post_eval(request: Request) -> Response:
        raw = await request.body()
        try:
            text = raw.decode()
        except UnicodeDecodeError:
            return _error(400, "fact body must be UTF-8 text")
        name = request.query_params.get("name", "query")
        facts = facts_from_source(text, name=name)
        errors = [d for d in facts.diagnostics if d.severity in ("error", "lex")]
        if errors:
            return _error(400, "unparseable fact body", errors)
        report = evaluate_spec(workspace.cset, facts)
        return _json_response(report_to_json(report), request)

    @app.get("/api/workspace")
    def get_workspace(request: Request) -> Response:
        payload = {
            "schema_version": "asplens.workspace/1",
            "input_hash": workspace.input_hash,
            "kb": workspace.kb_path.name,
            "weights": workspace.weights_path.name if workspace.weights_path else None,
            "specs": [name for name, _ in workspace.spec_sources],
        }
        return _json_response(dumps_canonical(payload), request)

    @app.get("/api/specs/{name}")
    def get_spec_source(name: str, request: Request) -> Response:
        for spec_name, source in workspace.spec_sources:
            if spec_name == name:
                body = source.encode()
                etag = '"' + hashlib.sha256(body).hexdigest() + '"'
                if request.headers.get("if-none-match") == etag:
                    return Response(status_code=304, headers={"ETag": etag})
                return Response(
                    content=body,
                    media_type="text/plain; charset=utf-8",
                    headers={"ETag": etag},
                )
        return _error(404, f"unknown spec {name}")

    return app

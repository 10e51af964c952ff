"""HTTP/JSON service exposing the workspace operations.

Handlers are stateless wrappers over the shared ops layer; equal inputs
produce payloads byte-identical to the CLI. Mutating requests are
serialized through a single writer lock; GET handlers never write."""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Request, Response

from . import ops
from .errors import DomainError
from .scm_engine import InvalidScm
from .workspace import Workspace


def _json_response(payload: dict, status: int = 200) -> Response:
    return Response(
        content=ops.render_json(payload) + "\n",
        media_type="application/json",
        status_code=status,
    )


def create_app(ws: Workspace) -> FastAPI:
    app = FastAPI(title="semcausal", version="0.1.0")
    write_lock = threading.Lock()

    @app.exception_handler(DomainError)
    async def _domain_error(_request: Request, exc: DomainError) -> Response:
        return _json_response({"error": exc.payload()}, status=exc.http_status)

    @app.exception_handler(InvalidScm)
    async def _invalid_scm(_request: Request, exc: InvalidScm) -> Response:
        return _json_response({"error": {"code": "INVALID_SCM", "message": str(exc)}}, status=400)

    @app.get("/units/{unit_id:path}/label")
    def unit_label(unit_id: str) -> Response:
        return _json_response(ops.get_label(ws, unit_id))

    @app.get("/units/{unit_id:path}")
    def unit(unit_id: str) -> Response:
        return _json_response(ops.get_unit(ws, unit_id))

    @app.get("/maps")
    def maps() -> Response:
        return _json_response(ops.list_maps(ws))

    @app.get("/maps/{map_id:path}/junctions")
    def map_junctions(map_id: str) -> Response:
        return _json_response(ops.junctions(ws, map_id))

    @app.post("/maps/{map_id:path}/perspective")
    async def map_perspective(map_id: str, request: Request) -> Response:
        body = await request.json()
        with write_lock:
            payload = ops.perspective(
                ws, map_id, body["cause"], body["effect"], context=body.get("context")
            )
        return _json_response(payload)

    @app.get("/maps/{map_id:path}")
    def map_view(map_id: str) -> Response:
        return _json_response(ops.get_map(ws, map_id))

    @app.post("/dsep")
    async def dsep(request: Request) -> Response:
        body = await request.json()
        return _json_response(
            ops.dsep(ws, body["map"], body["x"], body["y"], body.get("given", []))
        )

    @app.post("/identify")
    async def identify(request: Request) -> Response:
        body = await request.json()
        with write_lock:
            payload = ops.identify(ws, body["map"], body["cause"], body["effect"])
        return _json_response(payload)

    @app.post("/estimate")
    async def estimate(request: Request) -> Response:
        body = await request.json()
        return _json_response(
            ops.estimate(
                ws,
                body["method"],
                body["scm"],
                body["cause"],
                body["effect"],
                given=body.get("given"),
                mediators=body.get("mediators"),
            )
        )

    @app.post("/mediate")
    async def mediate(request: Request) -> Response:
        body = await request.json()
        return _json_response(
            ops.mediate(
                ws,
                body["scm"],
                body["cause"],
                body["mediator"],
                body["effect"],
                baseline=body.get("baseline", "0"),
                treated=body.get("treated", "1"),
            )
        )

    @app.post("/whatif")
    async def whatif(request: Request) -> Response:
        body = await request.json()
        return _json_response(
            ops.whatif(
                ws, body["scm"], body.get("observe", {}), body.get("do", {}), body["query"]
            )
        )

    @app.post("/ingest")
    async def ingest(request: Request) -> Response:
        body = await request.json()
        with write_lock:
            payload = ops.ingest(ws, body["nquads"])
        return _json_response(payload)

    @app.get("/nanopub/{unit_id:path}")
    def nanopub(unit_id: str) -> Response:
        return _json_response(ops.export_unit_nanopub(ws, unit_id))

    ui_dir = ws.config.ui_dir
    if ui_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        if bundled.is_dir():
            ui_dir = bundled
    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app

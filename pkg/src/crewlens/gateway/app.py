"""HTTP surface for the operator workflow."""
from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..domain import Site
from ..foil import FoilQuery
from ..planner import UnsolvableError
from .store import ConflictError, NotFoundError, Workbench

DATA_DIR_ENV = "CREWLENS_DATA"


def create_app(data_dir: str | None = None) -> FastAPI:
    bench = Workbench(data_dir or os.environ.get(DATA_DIR_ENV, "./data"))
    app = FastAPI(title="crewlens gateway")
    app.state.workbench = bench

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(ConflictError)
    async def _conflict(request: Request, exc: ConflictError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.exception_handler(ValueError)
    async def _invalid(request: Request, exc: ValueError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(UnsolvableError)
    async def _unsolvable(request: Request, exc: UnsolvableError):
        return JSONResponse(status_code=422, content={"error": str(exc), "task": exc.task})

    @app.get("/scenarios")
    def list_scenarios():
        return {"scenarios": bench.list_scenarios()}

    @app.post("/sessions", status_code=201)
    def create_session(body: dict):
        session = bench.create_session(body["scenario"])
        return session.to_json()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return bench.get_session(session_id).to_json()

    @app.post("/sessions/{session_id}/foils")
    def post_foil(session_id: str, body: list[dict]):
        outcome, explanation = bench.post_foil(session_id, FoilQuery.from_json(body))
        session = bench.get_session(session_id)
        return session.foil_history[-1]

    @app.post("/sessions/{session_id}/judgment")
    def post_judgment(session_id: str, body: dict):
        session = bench.set_initial_verdict(session_id, body["verdict"])
        return session.to_json()

    @app.patch("/sessions/{session_id}/domain")
    def patch_domain(session_id: str, body: dict):
        site = Site.parse(body["site"])
        session = bench.patch_domain(session_id, site, float(body["value"]))
        return session.to_json()

    @app.post("/sessions/{session_id}/finalize")
    def finalize(session_id: str, body: dict):
        metrics = bench.finalize(session_id, body["verdict"])
        return metrics.to_json()

    @app.get("/sessions/{session_id}/metrics")
    def get_metrics(session_id: str):
        session = bench.get_session(session_id)
        if session.metrics is None:
            raise ConflictError("session is not finalized")
        return session.metrics

    return app

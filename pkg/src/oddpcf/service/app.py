"""FastAPI wrapper around the analysis handlers.

Run with ``uvicorn oddpcf.service.app:app``.  Domain errors map to 422,
malformed input to 400.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..errors import OddPcfError
from . import handlers, schemas

app = FastAPI(title="oddpcf", version="0.1.0",
              description="Plane-graph odd / proper conflict-free coloring laboratory")


def _guard(fn, *args):
    try:
        return fn(*args)
    except OddPcfError as exc:
        raise HTTPException(status_code=422,
                            detail={"error": type(exc).__name__, "message": str(exc)})
    except ValueError as exc:
        raise HTTPException(status_code=400,
                            detail={"error": "ValueError", "message": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"schema": schemas.SCHEMA_VERSION, "status": "ok"}


@app.post("/faces", response_model=schemas.FacesResponse, response_model_by_alias=True)
def faces(graph: schemas.GraphInput):
    return _guard(handlers.faces, graph)


@app.post("/analyze", response_model=schemas.AnalyzeResponse, response_model_by_alias=True)
def analyze(graph: schemas.GraphInput):
    return _guard(handlers.analyze, graph)


@app.post("/detect", response_model=schemas.DetectResponse, response_model_by_alias=True)
def detect(req: schemas.DetectRequest):
    return _guard(handlers.detect, req)


@app.post("/discharge", response_model=schemas.DischargeResponse, response_model_by_alias=True)
def discharge(req: schemas.DischargeRequest):
    return _guard(handlers.discharge, req)


@app.post("/solve", response_model=schemas.SolveResponse, response_model_by_alias=True)
def solve(req: schemas.SolveRequest):
    return _guard(handlers.solve, req)


@app.post("/color", response_model=schemas.ColorResponse, response_model_by_alias=True)
def color(req: schemas.ColorRequest):
    return _guard(handlers.color, req)


@app.post("/generate", response_model=schemas.GenResponse, response_model_by_alias=True)
def generate(req: schemas.GenRequest):
    return _guard(handlers.gen, req)

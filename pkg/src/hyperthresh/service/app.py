"""FastAPI application exposing the compute handlers over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import handlers, schemas

app = FastAPI(
    title="hyperthresh",
    description="Thresholded polynomial projection: quadrature, shrinkage, bounds, experiments.",
    version="0.1.0",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


def _run(handler, request):
    try:
        return handler(request)
    except (ValueError, RuntimeError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.post("/quad", response_model=schemas.QuadResponse)
def quad(request: schemas.QuadRequest) -> schemas.QuadResponse:
    return _run(handlers.handle_quad, request)


@app.post("/prox", response_model=schemas.ProxResponse)
def prox(request: schemas.ProxRequest) -> schemas.ProxResponse:
    return _run(handlers.handle_prox, request)


@app.post("/sparsity", response_model=schemas.SparsityResponse)
def sparsity(request: schemas.SparsityRequest) -> schemas.SparsityResponse:
    return _run(handlers.handle_sparsity, request)


@app.post("/bounds/flip", response_model=schemas.BoundsResponse)
def flip_bounds(request: schemas.FlipBoundsRequest) -> schemas.BoundsResponse:
    return _run(handlers.handle_flip_bounds, request)


@app.post("/bounds/bernstein", response_model=schemas.BoundsResponse)
def bernstein_bounds(request: schemas.BernsteinBoundsRequest) -> schemas.BoundsResponse:
    return _run(handlers.handle_bernstein_bounds, request)


@app.post("/recover", response_model=schemas.RecoverResponse)
def recover(request: schemas.RecoverRequest) -> schemas.RecoverResponse:
    return _run(handlers.handle_recover, request)


@app.post("/denoise", response_model=schemas.DenoiseResponse)
def denoise(request: schemas.DenoiseRequest) -> schemas.DenoiseResponse:
    return _run(handlers.handle_denoise, request)

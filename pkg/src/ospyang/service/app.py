"""FastAPI front-end for the verification suite."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .models import CHECK_NAMES, Report, SuiteConfig
from .runner import run_suite

app = FastAPI(
    title="ospyang verification service",
    description="Exact verification suite for the osp(1|2) super Yangian double "
    "and its universal R-matrix",
)


@app.get("/health")
def health():
    return {"status": "ok"}


@app.get("/checks")
def checks():
    return {"checks": list(CHECK_NAMES)}


@app.post("/run", response_model=Report)
def run(config: SuiteConfig) -> Report:
    try:
        return run_suite(config)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))

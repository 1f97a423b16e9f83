"""HTTP evaluation service consumed by the design workbench.

Endpoints (all JSON):
  POST /api/simulate  {graph, sections, source?}
      -> {drift_x, drift_y, mass, violations, source, model_hash, config_hash}
  POST /api/size      {graph} -> {sections, p_soft, model_hash, config_hash}
  GET  /api/skeleton?seed=&stories=   -> skeleton JSON
  GET  /api/sections                   -> cross-section library

Schema violations return 400 with JSON-pointer paths; structurally
infeasible graphs (disconnected, wrong section count) return 422. All
responses carry the weight-file and oracle-config hashes. Evaluation is
stateless over frozen weights, so requests are order-independent.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Any

import numpy as np
from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..autodiff import ModelParams
from ..frame import solve
from ..graph import DisconnectedSkeletonError, to_graph
from ..sections import BEAM_SECTIONS, COLUMN_SECTIONS
from ..sizer import SectionSizer
from ..skeleton import (SkeletonConfig, sample_skeleton, skeleton_from_dict,
                        skeleton_to_dict)
from ..surrogate import DriftSurrogate
from .config import RunConfig
from .records import oracle_config_hash


class BarDoc(BaseModel):
    p1: list[float] = Field(min_length=3, max_length=3)
    p2: list[float] = Field(min_length=3, max_length=3)
    kind: str
    story: int


class PanelDoc(BaseModel):
    story: int
    x0: float
    y0: float
    x1: float
    y1: float


class GraphDoc(BaseModel):
    stories: int
    story_height: float
    spans_x: list[float]
    spans_y: list[float]
    cells: list[list[int]]
    bars: list[BarDoc]
    panels: list[PanelDoc]


class SimulateRequest(BaseModel):
    graph: GraphDoc
    sections: list[int]
    source: str = "surrogate"


class SizeRequest(BaseModel):
    graph: GraphDoc


class Infeasible(Exception):
    def __init__(self, detail: str):
        self.detail = detail


def _file_hash(path: str | None) -> str:
    if path is None:
        return "absent"
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def create_app(sim_weights: str, sizer_weights: str | None,
               run_config: RunConfig, allow_oracle: bool = False) -> FastAPI:
    surrogate = DriftSurrogate.from_params(ModelParams.load(sim_weights))
    surrogate.params.freeze()
    sizer = None
    if sizer_weights:
        sizer = SectionSizer.from_params(ModelParams.load(sizer_weights))
        sizer.params.freeze()
    lm = run_config.load_model()
    drift_scale = float(surrogate.params.meta["drift_scale"])
    drift_limit = float(surrogate.params.meta.get(
        "drift_limit", run_config.drift_limit))
    hashes = {
        "model_hash": _file_hash(sim_weights),
        "sizer_hash": _file_hash(sizer_weights),
        "config_hash": oracle_config_hash(lm),
    }
    sk_cfg = run_config.skeleton_config()

    app = FastAPI(title="gridsizer service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        pointers = []
        for err in exc.errors():
            loc = [str(p) for p in err["loc"] if p != "body"]
            pointers.append({"pointer": "/" + "/".join(loc),
                             "message": err["msg"]})
        return JSONResponse(status_code=400,
                            content={"detail": "schema violation",
                                     "errors": pointers})

    @app.exception_handler(Infeasible)
    async def infeasible_handler(request: Request, exc: Infeasible):
        return JSONResponse(status_code=422, content={"detail": exc.detail})

    def parse_skeleton(doc: GraphDoc):
        try:
            return skeleton_from_dict(doc.model_dump())
        except (ValueError, KeyError) as exc:
            raise Infeasible(f"invalid skeleton: {exc}") from exc

    @app.post("/api/simulate")
    def simulate(req: SimulateRequest) -> dict[str, Any]:
        sk = parse_skeleton(req.graph)
        sections = np.asarray(req.sections, dtype=np.int64)
        if len(sections) != sk.n_bars:
            raise Infeasible(
                f"{sk.n_bars} bars but {len(sections)} section indices")
        source = req.source
        if source not in ("surrogate", "oracle"):
            raise Infeasible(f"unknown source {source!r}")
        if source == "oracle" and not allow_oracle:
            raise Infeasible("oracle evaluation disabled on this server")
        try:
            if source == "oracle":
                res = solve(sk, sections, lm)
                drift_x = res.drift_x
                drift_y = res.drift_y
                mass = float(res.mass_total)
            else:
                graph = to_graph(sk, sections)
                pred = surrogate.predict([graph])[0]
                drift_x = pred.h[:, 0] * drift_scale
                drift_y = pred.h[:, 1] * drift_scale
                from ..frame import resolve_sections, total_mass
                mass = float(total_mass(sk, resolve_sections(sk, sections)))
        except DisconnectedSkeletonError as exc:
            raise Infeasible(str(exc)) from exc
        except IndexError as exc:
            raise Infeasible(str(exc)) from exc
        violations = [
            {"story": k + 1, "dir": d, "ratio": float(v),
             "limit": drift_limit}
            for d, arr in (("x", drift_x), ("y", drift_y))
            for k, v in enumerate(arr) if abs(v) > drift_limit
        ]
        return {
            "drift_x": [float(v) for v in drift_x],
            "drift_y": [float(v) for v in drift_y],
            "mass": mass,
            "violations": violations,
            "drift_limit": drift_limit,
            "source": source,
            **hashes,
        }

    @app.post("/api/size")
    def size(req: SizeRequest) -> dict[str, Any]:
        if sizer is None:
            raise Infeasible("no sizing weights loaded on this server")
        sk = parse_skeleton(req.graph)
        try:
            graph = to_graph(sk)
        except DisconnectedSkeletonError as exc:
            raise Infeasible(str(exc)) from exc
        indices, p_soft = sizer.propose(graph)
        return {
            "sections": [int(i) for i in indices],
            "p_soft": [[float(p) for p in row] for row in p_soft],
            **hashes,
        }

    @app.get("/api/skeleton")
    def skeleton(seed: int = Query(...),
                 stories: int | None = Query(default=None)) -> dict[str, Any]:
        cfg = sk_cfg
        if stories is not None:
            if not 1 <= stories <= 10:
                raise Infeasible("stories must lie in [1, 10]")
            cfg = SkeletonConfig(spans=sk_cfg.spans,
                                 base_range=sk_cfg.base_range,
                                 story_range=(stories, stories))
        doc = skeleton_to_dict(sample_skeleton(seed, cfg))
        return {"skeleton": doc, "seed": seed, **hashes}

    @app.get("/api/sections")
    def sections_endpoint() -> dict[str, Any]:
        def pack(lib):
            return [{"index": i, "name": s.name, "kind": s.kind, "A": s.A,
                     "Ix": s.Ix, "Iy": s.Iy, "J": s.J,
                     "unit_weight": s.unit_weight}
                    for i, s in enumerate(lib)]
        return {"columns": pack(COLUMN_SECTIONS), "beams": pack(BEAM_SECTIONS),
                **hashes}

    return app

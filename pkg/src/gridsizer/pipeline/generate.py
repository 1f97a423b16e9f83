"""Parallel dataset generation through the frame oracle."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..loads import LoadModel
from ..skeleton import (SkeletonConfig, assign_random_sections,
                        sample_skeleton, skeleton_to_dict)
from .records import oracle_config_hash

log = logging.getLogger(__name__)

_REPLACEMENT_OFFSET = 1_000_000_007


def _solve_record(task) -> dict:
    seed, cfg, lm = task
    try:
        from ..frame import solve
        sk = sample_skeleton(seed, cfg)
        sections = assign_random_sections(sk, seed + 1)
        res = solve(sk, sections, lm)
        return {
            "seed": seed,
            "skeleton": skeleton_to_dict(sk),
            "sections": [int(i) for i in sections],
            "drift_x": [float(v) for v in res.drift_x],
            "drift_y": [float(v) for v in res.drift_y],
            "mass": float(res.mass_total),
        }
    except Exception as exc:  # oracle failure: caller replaces the seed
        return {"seed": seed, "error": f"{type(exc).__name__}: {exc}"}


def generate_records(n: int, cfg: SkeletonConfig, lm: LoadModel, seed: int,
                     workers: int | None = None) -> tuple[dict, list[dict]]:
    """Solve n random skeletons; returns (header, records) with raw drifts
    normalized into [-1, 1] and the scale recorded in the header."""
    workers = workers if workers is not None else (os.cpu_count() or 1)
    seeds = [seed + i for i in range(n)]
    tasks = [(s, cfg, lm) for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_record, tasks, chunksize=8))
    else:
        results = [_solve_record(t) for t in tasks]

    replaced = 0
    next_extra = seed + _REPLACEMENT_OFFSET
    for i, rec in enumerate(results):
        while "error" in rec:
            log.warning("oracle failure for seed %s: %s; replacing",
                        rec["seed"], rec["error"])
            replaced += 1
            rec = _solve_record((next_extra, cfg, lm))
            next_extra += 1
        results[i] = rec

    scale = max((max(map(abs, r["drift_x"] + r["drift_y"]), default=0.0)
                 for r in results), default=0.0) or 1.0
    for rec in results:
        rec["drift_x"] = [v / scale for v in rec["drift_x"]]
        rec["drift_y"] = [v / scale for v in rec["drift_y"]]

    header = {
        "version": 1,
        "n_records": len(results),
        "seed": seed,
        "drift_scale": scale,
        "replaced": replaced,
        "story_range": list(cfg.story_range),
        "base_range": list(cfg.base_range),
        "oracle_hash": oracle_config_hash(lm),
        "load_model": {"R": lm.R, "Ie": lm.Ie, "Ss": lm.Ss},
    }
    return header, results

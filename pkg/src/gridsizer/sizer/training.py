"""Sizing-network training through the frozen drift surrogate."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..autodiff import Adam, ops
from ..frame import solve
from ..graph import FEATURE_DIM_SIZED, StructuralGraph, to_graph
from ..loads import LoadModel
from ..netgraph import make_batch
from ..skeleton import Skeleton, SkeletonConfig, sample_skeleton
from ..surrogate import DriftSurrogate
from .losses import (DualWeights, dual_step, sizing_losses, total_loss)
from .model import SectionSizer, SizerConfig


def check_surrogate_compatible(surrogate: DriftSurrogate) -> float:
    meta = surrogate.params.meta
    if meta.get("feature_dim") != FEATURE_DIM_SIZED:
        raise ValueError(
            f"surrogate expects feature width {meta.get('feature_dim')}, "
            f"but sized graphs are {FEATURE_DIM_SIZED} wide")
    if "drift_scale" not in meta:
        raise ValueError("surrogate weights carry no drift_scale; "
                         "train it on a dataset first")
    return float(meta["drift_scale"])


@dataclass
class EvalResult:
    mass_objective: float
    drift_constraint: float
    variety_constraint: float
    entropy_ratio: float

    def to_dict(self) -> dict:
        return {
            "mass_objective": self.mass_objective,
            "drift_constraint": self.drift_constraint,
            "variety_constraint": self.variety_constraint,
            "entropy_ratio": self.entropy_ratio,
        }


def train_sizer(cfg: SizerConfig, surrogate: DriftSurrogate,
                sampler, seed: int = 0,
                log_every: int = 0) -> tuple[SectionSizer, dict]:
    """Train through the frozen surrogate.

    `sampler(epoch) -> StructuralGraph` provides one fresh unsized graph
    per epoch; gradients accumulate and both the parameter step and the
    dual update run every cfg.update_every epochs.
    """
    drift_scale = check_surrogate_compatible(surrogate)
    surrogate.params.freeze()
    sizer = SectionSizer(cfg, seed=seed)
    opt = Adam(sizer.params, lr=cfg.lr, weight_decay=0.0)
    weights = DualWeights.initial(cfg)

    trace: list[dict] = []
    window: dict[str, list[float]] = {k: [] for k in ("obj", "l_dr", "l_var", "l_H")}
    t0 = time.time()
    for epoch in range(cfg.epochs):
        dropout_p = cfg.dropout * (1.0 - epoch / max(cfg.epochs - 1, 1))
        graph = sampler(epoch)
        batch = make_batch([graph])
        out = sizer.forward_batch(batch, mode="hard", train=True,
                                  dropout_p=dropout_p)
        stitched = sizer.stitched_features(out)
        h, _ = surrogate.forward_batch(batch, train=False, features=stitched)
        losses = sizing_losses(out, h, cfg, drift_scale)
        loss = total_loss(losses, cfg, weights)
        ops.scale(loss, 1.0 / cfg.update_every).backward()
        for k, t in losses.items():
            window[k].append(t.item())

        if (epoch + 1) % cfg.update_every == 0:
            opt.step()
            opt.zero_grad()
            means = {k: float(np.mean(v)) for k, v in window.items()}
            weights = dual_step(weights, means, cfg)
            trace.append({"epoch": epoch + 1, **means,
                          "w_drift": weights.drift,
                          "w_variety": weights.variety,
                          "w_entropy": weights.entropy,
                          "dropout": dropout_p})
            window = {k: [] for k in window}
            if log_every and len(trace) % log_every == 0:
                print(f"  update {len(trace)}: {trace[-1]}")

    report = {
        "epochs": cfg.epochs,
        "update_every": cfg.update_every,
        "objective_weight": cfg.objective_weight,
        "drift_limit": cfg.drift_limit,
        "train_seconds": time.time() - t0,
        "trace": trace,
    }
    sizer.params.meta["drift_scale"] = drift_scale
    sizer.params.meta["drift_limit"] = cfg.drift_limit
    sizer.params.meta["surrogate_layout_hash"] = surrogate.params.meta.get(
        "layout_hash")
    return sizer, report


def skeleton_sampler(cfg_sk: SkeletonConfig, seed: int):
    """Deterministic per-epoch skeleton stream (unsized graphs)."""
    def sample(epoch: int) -> StructuralGraph:
        return to_graph(sample_skeleton(seed + epoch, cfg_sk))
    return sample


def evaluation_skeletons(cfg_sk: SkeletonConfig, seed: int,
                         n: int) -> list[Skeleton]:
    """The fixed held-out evaluation set, regenerated from its seed list."""
    return [sample_skeleton(seed + k, cfg_sk) for k in range(n)]


def evaluate_sizer(sizer: SectionSizer, surrogate: DriftSurrogate,
                   skeletons: list[Skeleton], cfg: SizerConfig,
                   lm: LoadModel | None = None) -> dict:
    """Greedy-design metrics; with a LoadModel the drifts come from the
    oracle as well (surrogate-vs-oracle honesty gap)."""
    drift_scale = check_surrogate_compatible(surrogate)
    obj_vals, l_dr_sur, l_var_vals, h_ratios = [], [], [], []
    l_dr_oracle = []
    for sk in skeletons:
        graph = to_graph(sk)
        indices, p_soft = sizer.propose(graph)
        sized = to_graph(sk, indices)
        pred = surrogate.predict([sized])[0]
        drifts = pred.h * drift_scale
        l_dr_sur.append(_leaky_excess(drifts, cfg.drift_limit))
        if lm is not None:
            res = solve(sk, indices, lm)
            oracle_drifts = np.column_stack([res.drift_x, res.drift_y])
            l_dr_oracle.append(_leaky_excess(oracle_drifts, cfg.drift_limit))
        from ..frame import resolve_sections, total_mass
        mass = total_mass(sk, resolve_sections(sk, indices))
        obj_vals.append(mass / 2000.0 / sk.n_bars)
        usage = np.bincount(indices[_beam_rows(sk)], minlength=9) \
            + np.bincount(indices[~_beam_rows(sk)], minlength=9)
        p = usage / usage.sum()
        l_var_vals.append(1.0 - np.sort(p)[::-1][:6].sum())
        with np.errstate(divide="ignore", invalid="ignore"):
            h = -(p_soft * np.log(np.maximum(p_soft, 1e-12))).sum(axis=1)
        h_ratios.append(h.mean() / np.log(9))

    report = {
        "n_designs": len(skeletons),
        "mass_objective": float(np.mean(obj_vals)),
        "drift_constraint_surrogate": float(np.mean(l_dr_sur)),
        "variety_constraint": float(np.mean(l_var_vals)),
        "entropy_ratio": float(np.mean(h_ratios)),
    }
    if lm is not None:
        report["drift_constraint_oracle"] = float(np.mean(l_dr_oracle))
    return report


def _leaky_excess(drifts: np.ndarray, lim: float, slope: float = 0.01) -> float:
    x = np.abs(drifts) - lim
    return float(np.where(x > 0, x, slope * x).mean())


def _beam_rows(sk: Skeleton) -> np.ndarray:
    return np.array([b.kind == "beam" for b in sk.bars])

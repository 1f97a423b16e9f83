"""Sizing objective and constraint losses, and the dual-variable updates.

Total loss: w0*obj + w1*l_dr + w2*l_var + w3*l_H. The objective is mass
(short tons) per bar. Constraints: mean drift-limit exceedance through
the frozen surrogate (leaky-rectified so satisfied stories contribute a
small negative margin), variety (at most 6 distinct section slots, via
the top-6 usage mass), and a mean-entropy target on the decoder
distribution. Constraint weights follow projected dual ascent:
w <- max(0, w + gamma * constraint).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..autodiff import ops
from ..sections import STEEL_DENSITY_PCF
from .model import H_MAX, SizerConfig, SizingOutput, area_matrix

LB_PER_TON = 2000.0


@dataclass
class DualWeights:
    drift: float
    variety: float
    entropy: float

    @classmethod
    def initial(cls, cfg: SizerConfig) -> "DualWeights":
        return cls(cfg.w_drift, cfg.w_variety, cfg.w_entropy)


def bar_lengths_ft(out: SizingOutput) -> np.ndarray:
    feats = np.concatenate(
        [g.node_features[:-1] for g in out.batch.graphs], axis=0)
    return np.linalg.norm(feats[:, 3:6] - feats[:, 0:3], axis=1)


def mass_objective(out: SizingOutput) -> ops.Tensor:
    """Mean over graphs of (total mass in short tons) / (bar count)."""
    batch = out.batch
    lengths = bar_lengths_ft(out)
    areas = area_matrix(out.bar_kind_is_beam)
    bar_graph = batch.graph_of[batch.bar_nodes]
    n_bars = np.bincount(bar_graph, minlength=batch.n_graphs).astype(float)
    per_bar = lengths * STEEL_DENSITY_PCF / 144.0 / LB_PER_TON
    weights = areas * per_bar[:, None]
    weights /= (n_bars[bar_graph] * batch.n_graphs)[:, None]
    return ops.sum_all(ops.mul(out.y, ops.Tensor(weights)))


def drift_constraint(sim_h: ops.Tensor, drift_scale: float,
                     drift_limit: float) -> ops.Tensor:
    """Mean leaky-rectified exceedance of |drift| over the limit."""
    drifts = ops.scale(sim_h, drift_scale)
    excess = ops.sub(ops.absolute(drifts), ops.Tensor(np.array(drift_limit)))
    return ops.mean_all(ops.leaky_relu(excess, 0.01))


def variety_constraint(out: SizingOutput, top_k: int = 6) -> ops.Tensor:
    """Mean over graphs of 1 - (top-k share of section usage)."""
    batch = out.batch
    bar_graph = batch.graph_of[batch.bar_nodes]
    terms = []
    for g in range(batch.n_graphs):
        rows = np.flatnonzero(bar_graph == g)
        p = ops.matmul(ops.Tensor(np.full((1, len(rows)), 1.0 / len(rows))),
                       ops.gather_rows(out.y, rows))
        top = ops.sum_top_k(ops.reshape(p, (-1,)), top_k)
        terms.append(ops.sub(ops.Tensor(np.array(1.0)), top))
    total = terms[0]
    for t in terms[1:]:
        total = ops.add(total, t)
    return ops.scale(total, 1.0 / len(terms))


def entropy_constraint(out: SizingOutput, alpha: float) -> ops.Tensor:
    """Mean decoder entropy over bars, as a ratio of ln(9), minus alpha."""
    p = out.p_soft
    logp = ops.log(ops.add(p, ops.Tensor(np.array(1e-12))))
    per_bar = ops.matmul(ops.mul(p, logp),
                         ops.Tensor(-np.ones((p.shape[1], 1))))
    ratio = ops.scale(ops.mean_all(per_bar), 1.0 / H_MAX)
    return ops.sub(ratio, ops.Tensor(np.array(alpha)))


def sizing_losses(out: SizingOutput, sim_h: ops.Tensor, cfg: SizerConfig,
                  drift_scale: float) -> dict[str, ops.Tensor]:
    return {
        "obj": mass_objective(out),
        "l_dr": drift_constraint(sim_h, drift_scale, cfg.drift_limit),
        "l_var": variety_constraint(out),
        "l_H": entropy_constraint(out, cfg.alpha),
    }


def total_loss(losses: dict[str, ops.Tensor], cfg: SizerConfig,
               w: DualWeights) -> ops.Tensor:
    return ops.add(
        ops.add(ops.scale(losses["obj"], cfg.objective_weight),
                ops.scale(losses["l_dr"], w.drift)),
        ops.add(ops.scale(losses["l_var"], w.variety),
                ops.scale(losses["l_H"], w.entropy)))


def dual_step(w: DualWeights, values: dict[str, float],
              cfg: SizerConfig) -> DualWeights:
    """Ascent on the constraint weights; w0 is never adapted.

    Drift and variety are inequality constraints, so their multipliers
    are projected to stay nonnegative. Entropy is an equality target: its
    multiplier is free-signed (a negative weight rewards entropy, which
    is what keeps the output distribution from collapsing early).
    """
    return DualWeights(
        drift=max(0.0, w.drift + cfg.gamma_drift * values["l_dr"]),
        variety=max(0.0, w.variety + cfg.gamma_variety * values["l_var"]),
        entropy=w.entropy + cfg.gamma_entropy * values["l_H"],
    )

"""Sizing network: per-bar cross-section choice via hard categorical samples.

Same encoder/propagation structure as the drift surrogate (no story
recursion, no position messages). A max-pooled graph embedding is
concatenated to every node embedding before the decoder emits 9-way
logits; slots invalid for a bar's kind (columns use slots 0-4) are masked
out before sampling. Hard mode emits exact one-hots whose gradients are
those of the soft samples; soft mode is deterministic and returns the
decoder's distribution.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ..autodiff import ModelParams, no_grad, ops
from ..autodiff.nn import linear, linear_params, slp, split_weights
from ..graph import (FEATURE_DIM_SIZED, FEATURE_DIM_UNSIZED,
                     SECTION_SLOT_OFFSET, StructuralGraph)
from ..netgraph import GraphBatch, feature_scale, make_batch
from ..sections import (BEAM_SECTIONS, COLUMN_SECTIONS, N_SECTION_SLOTS,
                        STEEL_DENSITY_PCF)

MASK_VALUE = -1e30
H_MAX = float(np.log(N_SECTION_SLOTS))


@dataclass
class SizerConfig:
    embed_dim: int = 512
    prop_steps: int = 5
    n_sections: int = N_SECTION_SLOTS
    alpha: float = 0.6              # target mean-entropy ratio
    drift_limit: float = 0.015
    objective_weight: float = 1.0
    w_drift: float = 1e3
    gamma_drift: float = 1e-1
    w_variety: float = 1.0
    gamma_variety: float = 5e-4
    w_entropy: float = 1.0
    gamma_entropy: float = 1e-3
    epochs: int = 50_000
    update_every: int = 5
    batch: int = 5
    lr: float = 1e-4
    dropout: float = 0.5            # decays linearly to 0 during training
    temperature: float = 1.0
    feature_dim: int = FEATURE_DIM_UNSIZED

    def __post_init__(self) -> None:
        if min(self.gamma_drift, self.gamma_variety, self.gamma_entropy) <= 0:
            raise ValueError("dual learning rates must be positive")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must be in (0, 1)")

    def layout_hash(self) -> str:
        desc = f"p1,p2,B,L3|d={self.feature_dim}|embed={self.embed_dim}" \
               f"|steps={self.prop_steps}"
        return hashlib.sha256(desc.encode()).hexdigest()[:16]


@dataclass
class SizingOutput:
    y: ops.Tensor            # (bars, 9) one-hot rows (hard) or soft probs
    p_soft: ops.Tensor       # (bars, 9) decoder distribution
    bar_kind_is_beam: np.ndarray
    batch: GraphBatch

    def section_indices(self) -> np.ndarray:
        """Kind-local section index per bar (masking keeps them valid)."""
        return np.argmax(self.y.data, axis=1)


def kind_mask(is_beam: np.ndarray) -> np.ndarray:
    """Additive logit mask zeroing out slots invalid for columns."""
    mask = np.zeros((len(is_beam), N_SECTION_SLOTS))
    mask[~is_beam, len(COLUMN_SECTIONS):] = MASK_VALUE
    return mask


def area_matrix(is_beam: np.ndarray) -> np.ndarray:
    """(bars, 9) cross-section areas aligned with the shared slot space."""
    col = np.zeros(N_SECTION_SLOTS)
    col[:len(COLUMN_SECTIONS)] = [s.A for s in COLUMN_SECTIONS]
    beam = np.array([s.A for s in BEAM_SECTIONS])
    return np.where(is_beam[:, None], beam, col)


class SectionSizer:
    def __init__(self, cfg: SizerConfig, seed: int = 0,
                 params: ModelParams | None = None):
        self.cfg = cfg
        if params is not None:
            self.params = params
            return
        p = ModelParams(meta={
            "arch": "section_sizer",
            "embed_dim": cfg.embed_dim,
            "prop_steps": cfg.prop_steps,
            "n_sections": cfg.n_sections,
            "feature_dim": cfg.feature_dim,
            "layout_hash": cfg.layout_hash(),
        }, seed=seed)
        rng = np.random.default_rng(seed)
        e = cfg.embed_dim
        linear_params(p, "encoder", cfg.feature_dim, e, rng)
        linear_params(p, "message", 2 * e, e, rng)
        linear_params(p, "update", 2 * e, e, rng)
        linear_params(p, "dec1", 2 * e, e, rng)
        linear_params(p, "dec2", e, cfg.n_sections, rng)
        self.params = p

    @classmethod
    def from_params(cls, params: ModelParams) -> "SectionSizer":
        m = params.meta
        cfg = SizerConfig(embed_dim=m["embed_dim"], prop_steps=m["prop_steps"],
                          n_sections=m["n_sections"], feature_dim=m["feature_dim"])
        return cls(cfg, params=params)

    def forward_batch(self, batch: GraphBatch, mode: str = "hard",
                      train: bool = False,
                      rng: np.random.Generator | None = None,
                      dropout_p: float | None = None) -> SizingOutput:
        if batch.features.shape[1] != self.cfg.feature_dim:
            raise ValueError(f"expected feature width {self.cfg.feature_dim}, "
                             f"got {batch.features.shape[1]}")
        rng = rng if rng is not None else self.params.rng
        p_drop = self.cfg.dropout if dropout_p is None else dropout_p
        e = self.cfg.embed_dim
        v = slp(self.params, "encoder", ops.Tensor(batch.features))
        for _ in range(self.cfg.prop_steps):
            (w_recv, w_send), b_msg = split_weights(self.params, "message",
                                                    [e, e])
            recv = ops.add(ops.matmul(v, w_recv), b_msg)
            send = ops.matmul(v, w_send)
            if not ops.grad_enabled():
                from ..edgeops import edge_message_mean
                m = ops.Tensor(edge_message_mean(recv.data, send.data,
                                                 batch.dst, batch.src, 0.01))
            else:
                edge = ops.add(ops.gather_rows(recv, batch.dst),
                               ops.gather_rows(send, batch.src))
                m = ops.segment_mean(ops.leaky_relu(edge), batch.dst,
                                     batch.n_nodes)
            (u_self, u_msg), b_upd = split_weights(self.params, "update",
                                                   [e, e])
            v = ops.leaky_relu(ops.add(ops.add(ops.matmul(v, u_self),
                                               ops.matmul(m, u_msg)), b_upd))
            v = ops.dropout(v, p_drop, rng, train)

        g = ops.segment_max(v, batch.graph_of, batch.n_graphs)
        bars = ops.gather_rows(v, batch.bar_nodes)
        g_per_bar = ops.gather_rows(g, batch.graph_of[batch.bar_nodes])
        dec_in = ops.concat([bars, g_per_bar], axis=1)
        hidden = ops.dropout(ops.leaky_relu(linear(self.params, "dec1", dec_in)),
                             p_drop, rng, train)
        logits = linear(self.params, "dec2", hidden)

        # B flag is 1 for beams (scaled features keep it 0/1)
        is_beam = batch.features[batch.bar_nodes, 6] == 1.0
        masked = ops.add(logits, ops.Tensor(kind_mask(is_beam)))
        p_soft = ops.softmax(masked)
        if mode == "hard":
            y = ops.gumbel_softmax_hard(masked, self.cfg.temperature, rng)
        elif mode == "soft":
            y = p_soft
        else:
            raise ValueError(f"unknown mode: {mode}")
        return SizingOutput(y=y, p_soft=p_soft, bar_kind_is_beam=is_beam,
                            batch=batch)

    def propose(self, graph: StructuralGraph) -> tuple[np.ndarray, np.ndarray]:
        """Frozen inference: (kind-local section indices, soft probabilities)."""
        batch = make_batch([graph])
        with no_grad():
            out = self.forward_batch(batch, mode="soft", train=False)
        return np.argmax(out.p_soft.data, axis=1), out.p_soft.data

    def stitched_features(self, out: SizingOutput) -> ops.Tensor:
        """Sized 19-wide scaled features with y written into the T slots."""
        batch = out.batch
        scale19 = feature_scale(FEATURE_DIM_SIZED)
        full = np.full((batch.n_nodes, FEATURE_DIM_SIZED), -1.0) * scale19
        raw10 = batch.features  # already scaled for width 10
        lo, hi = SECTION_SLOT_OFFSET, SECTION_SLOT_OFFSET + N_SECTION_SLOTS
        full[batch.bar_nodes, :lo] = raw10[batch.bar_nodes, :lo]
        full[batch.bar_nodes, lo:hi] = 0.0
        full[batch.bar_nodes, hi:] = raw10[batch.bar_nodes, lo:]
        left = ops.Tensor(full[batch.bar_nodes, :lo])
        right = ops.Tensor(full[batch.bar_nodes, hi:])
        bar_rows = ops.concat([left, out.y, right], axis=1)
        return ops.row_update(ops.Tensor(full), batch.bar_nodes, bar_rows)

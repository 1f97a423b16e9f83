"""Drift surrogate: encoder, message passing, story-recursive decoder.

Node features are encoded to an embedding, refined by a fixed number of
mean-aggregated message-passing steps (optionally extended with an
anchor-set position message weighted by inverse hop distance), pooled per
story, then decoded top-down so each story embedding sees the updated
embedding of the story above before the drift regressor and the
limit-exceedance classifier read it out.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..autodiff import ModelParams, no_grad, ops
from ..autodiff.nn import linear, linear_params, slp, split_weights
from ..graph import FEATURE_DIM_SIZED, StructuralGraph, geodesic_distances
from ..netgraph import GraphBatch, make_batch


@dataclass
class SurrogateConfig:
    embed_dim: int = 512
    prop_steps: int = 5
    use_position_aware: bool = False
    anchor_count: int = 512
    dropout: float = 0.5
    drift_limit: float = 0.015
    multitask_weight: float = 1.0
    feature_dim: int = FEATURE_DIM_SIZED

    def __post_init__(self) -> None:
        if self.prop_steps < 1 or self.embed_dim < 1:
            raise ValueError("prop_steps and embed_dim must be >= 1")

    def layout_hash(self) -> str:
        desc = f"p1,p2,B,T9,L3|d={self.feature_dim}|embed={self.embed_dim}" \
               f"|steps={self.prop_steps}|pos={self.use_position_aware}"
        return hashlib.sha256(desc.encode()).hexdigest()[:16]


@dataclass
class SimPrediction:
    h: np.ndarray  # (stories, 2) drift X/Y in the dataset's normalized scale
    c: np.ndarray  # (stories, 2) exceedance probability


class DriftSurrogate:
    def __init__(self, cfg: SurrogateConfig, seed: int = 0,
                 params: ModelParams | None = None):
        self.cfg = cfg
        if params is not None:
            self.params = params
            return
        p = ModelParams(meta={
            "arch": "drift_surrogate",
            "embed_dim": cfg.embed_dim,
            "prop_steps": cfg.prop_steps,
            "use_position_aware": cfg.use_position_aware,
            "anchor_count": cfg.anchor_count,
            "dropout": cfg.dropout,
            "drift_limit": cfg.drift_limit,
            "multitask_weight": cfg.multitask_weight,
            "feature_dim": cfg.feature_dim,
            "layout_hash": cfg.layout_hash(),
        }, seed=seed)
        rng = np.random.default_rng(seed)
        e = cfg.embed_dim
        linear_params(p, "encoder", cfg.feature_dim, e, rng)
        linear_params(p, "message", 2 * e, e, rng)
        upd_in = 3 * e if cfg.use_position_aware else 2 * e
        if cfg.use_position_aware:
            linear_params(p, "pos_message", 2 * e, e, rng)
        linear_params(p, "update", upd_in, e, rng)
        linear_params(p, "recursive", 2 * e, e, rng)
        linear_params(p, "dec1", e, max(e // 2, 2), rng)
        linear_params(p, "dec2", max(e // 2, 2), 2, rng)
        linear_params(p, "cls1", e, max(e // 2, 2), rng)
        linear_params(p, "cls2", max(e // 2, 2), 2, rng)
        self.params = p

    @classmethod
    def from_params(cls, params: ModelParams) -> "DriftSurrogate":
        m = params.meta
        cfg = SurrogateConfig(
            embed_dim=m["embed_dim"], prop_steps=m["prop_steps"],
            use_position_aware=m["use_position_aware"],
            anchor_count=m["anchor_count"], dropout=m["dropout"],
            drift_limit=m["drift_limit"],
            multitask_weight=m["multitask_weight"],
            feature_dim=m["feature_dim"])
        return cls(cfg, params=params)

    # ------------------------------------------------------------- pieces

    def encode(self, features: ops.Tensor) -> ops.Tensor:
        if features.shape[1] != self.cfg.feature_dim:
            raise ValueError(
                f"expected feature width {self.cfg.feature_dim}, "
                f"got {features.shape[1]}")
        return slp(self.params, "encoder", features)

    def propagate_step(self, v: ops.Tensor, batch: GraphBatch,
                       train: bool, rng: np.random.Generator,
                       pos_index: tuple[np.ndarray, np.ndarray] | None,
                       dropout_p: float) -> ops.Tensor:
        e = self.cfg.embed_dim
        # pairwise message on [v_receiver, v_sender]; the weight matrix is
        # applied per node and gathered per edge (split_weights docstring),
        # with the bias folded into the receiver half
        (w_recv, w_send), b_msg = split_weights(self.params, "message", [e, e])
        recv = ops.add(ops.matmul(v, w_recv), b_msg)
        send = ops.matmul(v, w_send)
        if not ops.grad_enabled():
            from ..edgeops import edge_message_mean
            m = ops.Tensor(edge_message_mean(recv.data, send.data,
                                             batch.dst, batch.src, 0.01))
        else:
            edge = ops.add(ops.gather_rows(recv, batch.dst),
                           ops.gather_rows(send, batch.src))
            msg = ops.leaky_relu(edge)
            m = ops.segment_mean(msg, batch.dst, batch.n_nodes)
        if self.cfg.use_position_aware:
            anchor_idx, weights = pos_index
            n, s = anchor_idx.shape
            rows_i = np.repeat(np.arange(n), s)
            rows_j = anchor_idx.ravel()
            w = weights.ravel()[:, None]
            (w_self, w_anchor), b_pos = split_weights(self.params,
                                                      "pos_message", [e, e])
            self_part = ops.gather_rows(ops.matmul(v, w_self), rows_i)
            anchor_part = ops.mul(
                ops.gather_rows(ops.matmul(v, w_anchor), rows_j),
                ops.Tensor(w))
            pmsg = ops.leaky_relu(ops.add(ops.add(self_part, anchor_part),
                                          b_pos))
            mp = ops.segment_mean(pmsg, rows_i, n)
            blocks, b_upd = split_weights(self.params, "update", [e, e, e])
            pre = ops.add(ops.add(ops.matmul(v, blocks[0]),
                                  ops.matmul(mp, blocks[1])),
                          ops.add(ops.matmul(m, blocks[2]), b_upd))
        else:
            (u_self, u_msg), b_upd = split_weights(self.params, "update",
                                                   [e, e])
            pre = ops.add(ops.add(ops.matmul(v, u_self),
                                  ops.matmul(m, u_msg)), b_upd)
        out = ops.leaky_relu(pre)
        return ops.dropout(out, dropout_p, rng, train)

    def structured_decode(self, story: ops.Tensor,
                          batch: GraphBatch) -> ops.Tensor:
        """Update story embeddings strictly top-down; the roof stays as-is."""
        if batch.n_story_segs == 0:
            raise ValueError("no stories to decode")
        max_k = max(batch.stories)
        levels = batch.seg_level
        tops = np.array(batch.stories)[batch.seg_graph]
        for depth in range(1, max_k):
            cur = np.flatnonzero((tops - levels) == depth)
            if len(cur) == 0:
                continue
            above = cur + 1  # segment ids are contiguous per graph by level
            upd = slp(self.params, "recursive",
                      ops.concat([ops.gather_rows(story, cur),
                                  ops.gather_rows(story, above)], axis=1))
            story = ops.row_update(story, cur, upd)
        return story

    def _anchor_index(self, graph: StructuralGraph,
                      rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        """Farthest node per anchor set and its inverse-distance weight."""
        d = geodesic_distances(graph)
        n = graph.n_nodes
        n_sets = self.cfg.anchor_count
        m = max(1, int(np.log2(n)))
        idx = np.empty((n, n_sets), dtype=np.int64)
        w = np.empty((n, n_sets))
        for s in range(n_sets):
            size = max(1, n >> (1 + (s % m)))
            members = rng.integers(0, n, size=size)  # with replacement
            dist = d[members]                        # (size, n)
            far = np.argmax(dist, axis=0)
            idx[:, s] = members[far]
            w[:, s] = 1.0 / (dist[far, np.arange(n)] + 1.0)
        return idx, w

    # ------------------------------------------------------------- forward

    def forward_batch(self, batch: GraphBatch, train: bool = False,
                      rng: np.random.Generator | None = None,
                      dropout_p: float | None = None,
                      features: ops.Tensor | None = None,
                      ) -> tuple[ops.Tensor, ops.Tensor]:
        """Story-level (h, c) tensors for a packed batch.

        `features` overrides the batch's own (scaled) feature matrix; the
        sizing network uses this to stitch its one-hot section choices in
        while keeping gradients flowing.
        """
        rng = rng if rng is not None else self.params.rng
        p = self.cfg.dropout if dropout_p is None else dropout_p
        pos_index = None
        if self.cfg.use_position_aware:
            if batch.n_graphs != 1:
                raise ValueError("position-aware messages support single-graph batches")
            pos_index = self._anchor_index(batch.graphs[0], rng)
        v = self.encode(features if features is not None
                        else ops.Tensor(batch.features))
        for _ in range(self.cfg.prop_steps):
            v = self.propagate_step(v, batch, train, rng, pos_index, p)
        bars = ops.gather_rows(v, batch.bar_nodes)
        story = ops.segment_mean(bars, batch.bar_story_seg, batch.n_story_segs)
        story = self.structured_decode(story, batch)
        h = linear(self.params, "dec2",
                   ops.leaky_relu(linear(self.params, "dec1", story)))
        c = ops.sigmoid(linear(self.params, "cls2",
                               ops.leaky_relu(linear(self.params, "cls1", story))))
        return h, c

    def predict(self, graphs: list[StructuralGraph]) -> list[SimPrediction]:
        """Frozen-model inference (no tape, dropout off)."""
        batch = make_batch(graphs)
        with no_grad():
            h, c = self.forward_batch(batch, train=False)
        out = []
        for g in range(batch.n_graphs):
            segs = batch.segments_of_graph(g)
            out.append(SimPrediction(h=h.data[segs], c=c.data[segs]))
        return out

    # --------------------------------------------------------------- loss

    def loss(self, h: ops.Tensor, c: ops.Tensor, truth_h: np.ndarray,
             labels: np.ndarray) -> ops.Tensor:
        """Mean L1 on drifts plus weighted binary cross-entropy."""
        l1 = ops.l1_loss(h, ops.Tensor(truth_h))
        bce = ops.bce_loss(c, labels)
        return ops.add(l1, ops.scale(bce, self.cfg.multitask_weight))

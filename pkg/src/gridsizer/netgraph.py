"""Batched graph arrays for the neural models.

Multiple structural graphs are packed as one disjoint union: node, edge,
story and graph segment ids are offset per member so that all message
passing and pooling reduce to gather/segment ops over 2-D arrays. Ground
nodes take part in propagation but are excluded from story pooling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import StructuralGraph

# Fixed input conditioning for the encoders: coordinates span hundreds of
# feet and carried areas hundreds of ft^2, so they are scaled near unit
# range (ground-node -1 markers stay O(1)).
COORD_SCALE = 1.0 / 200.0
AREA_SCALE = 1.0 / 500.0


def feature_scale(dim: int) -> np.ndarray:
    s = np.ones(dim)
    s[0:6] = COORD_SCALE
    s[dim - 1] = AREA_SCALE
    return s


@dataclass
class GraphBatch:
    features: np.ndarray      # (N, d) scaled node features
    src: np.ndarray           # directed edges, messages flow src -> dst
    dst: np.ndarray
    n_nodes: int
    n_graphs: int
    graph_of: np.ndarray      # (N,) graph id per node
    bar_nodes: np.ndarray     # indices of non-ground nodes
    bar_story_seg: np.ndarray  # (len(bar_nodes),) global story segment id
    n_story_segs: int
    seg_graph: np.ndarray     # (S,) graph id per story segment
    seg_level: np.ndarray     # (S,) story level, 1-based
    seg_top: np.ndarray       # (S,) bool, top story of its graph
    stories: list[int]        # per-graph story count
    graphs: list[StructuralGraph]

    def segments_of_graph(self, g: int) -> np.ndarray:
        return np.flatnonzero(self.seg_graph == g)


def make_batch(graphs: list[StructuralGraph]) -> GraphBatch:
    dims = {g.feature_dim for g in graphs}
    if len(dims) != 1:
        raise ValueError(f"mixed feature widths in batch: {sorted(dims)}")
    dim = dims.pop()
    scale = feature_scale(dim)

    feats, srcs, dsts = [], [], []
    graph_of, bar_nodes, bar_story_seg = [], [], []
    seg_graph, seg_level, seg_top, stories = [], [], [], []
    node_off = 0
    seg_off = 0
    for gi, g in enumerate(graphs):
        feats.append(g.node_features * scale)
        s, d = g.neighbor_arrays()
        srcs.append(s + node_off)
        dsts.append(d + node_off)
        graph_of.append(np.full(g.n_nodes, gi))
        for i in range(g.n_nodes):
            if i == g.ground_index:
                continue
            bar_nodes.append(node_off + i)
            bar_story_seg.append(seg_off + int(g.story_of[i]) - 1)
        for k in range(1, g.stories + 1):
            seg_graph.append(gi)
            seg_level.append(k)
            seg_top.append(k == g.stories)
        stories.append(g.stories)
        node_off += g.n_nodes
        seg_off += g.stories

    return GraphBatch(
        features=np.concatenate(feats, axis=0),
        src=np.concatenate(srcs),
        dst=np.concatenate(dsts),
        n_nodes=node_off,
        n_graphs=len(graphs),
        graph_of=np.concatenate(graph_of),
        bar_nodes=np.array(bar_nodes, dtype=np.int64),
        bar_story_seg=np.array(bar_story_seg, dtype=np.int64),
        n_story_segs=seg_off,
        seg_graph=np.array(seg_graph, dtype=np.int64),
        seg_level=np.array(seg_level, dtype=np.int64),
        seg_top=np.array(seg_top, dtype=bool),
        stories=stories,
        graphs=list(graphs),
    )

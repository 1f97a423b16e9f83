"""Structural graph: one node per bar plus a pseudo ground node.

Node features are laid out as [p1(3), p2(3), B(1), T(9), L(3)] giving
width 19 when section one-hots are present and 10 without them. B is 0
for columns and 1 for beams. T holds the one-hot section slot within the
bar's own sub-library (columns occupy slots 0-4, beams 0-8). L packs the
auxiliary load hints: roof flag, boundary flag, carried panel area. The
ground node's features are all -1 and it connects to every first-story
column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .loads import boundary_flags, tributary_areas
from .sections import COLUMN, N_SECTION_SLOTS
from .skeleton import Skeleton

FEATURE_DIM_UNSIZED = 10
FEATURE_DIM_SIZED = FEATURE_DIM_UNSIZED + N_SECTION_SLOTS
SECTION_SLOT_OFFSET = 7  # [p1, p2, B] come first


class DisconnectedSkeletonError(ValueError):
    """The bar network does not form a single connected component."""


@dataclass(frozen=True)
class StructuralGraph:
    node_features: np.ndarray        # (N, 10|19) float64
    edges: np.ndarray                # (E, 2) int64, i < j, undirected
    story_of: np.ndarray             # (N,) int64; ground node is story 0
    ground_index: int
    stories: int
    story_height: float

    @property
    def n_nodes(self) -> int:
        return self.node_features.shape[0]

    @property
    def feature_dim(self) -> int:
        return self.node_features.shape[1]

    def neighbor_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Directed (src, dst) arrays covering both edge directions."""
        e = self.edges
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        return src, dst

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_nodes, self.n_nodes), dtype=bool)
        a[self.edges[:, 0], self.edges[:, 1]] = True
        a[self.edges[:, 1], self.edges[:, 0]] = True
        return a


def _joint_map(sk: Skeleton) -> dict[tuple, list[int]]:
    joints: dict[tuple, list[int]] = {}
    for i, bar in enumerate(sk.bars):
        joints.setdefault(bar.p1, []).append(i)
        joints.setdefault(bar.p2, []).append(i)
    return joints


def to_graph(sk: Skeleton, sections: np.ndarray | None = None) -> StructuralGraph:
    """Convert a skeleton (optionally with per-bar section indices) to a graph."""
    n_bars = sk.n_bars
    if n_bars == 0:
        raise ValueError("skeleton has no bars")
    ground = n_bars
    edge_set: set[tuple[int, int]] = set()
    for members in _joint_map(sk).values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                edge_set.add((min(i, j), max(i, j)))
    for i, bar in enumerate(sk.bars):
        if bar.kind == COLUMN and min(bar.p1[2], bar.p2[2]) == 0.0:
            edge_set.add((i, ground))
    edges = np.array(sorted(edge_set), dtype=np.int64)

    _check_connected(n_bars + 1, edges)

    dim = FEATURE_DIM_UNSIZED if sections is None else FEATURE_DIM_SIZED
    feats = np.full((n_bars + 1, dim), -1.0)
    trib = tributary_areas(sk)
    boundary = boundary_flags(sk)
    for i, bar in enumerate(sk.bars):
        feats[i, 0:3] = bar.p1
        feats[i, 3:6] = bar.p2
        feats[i, 6] = 0.0 if bar.kind == COLUMN else 1.0
        col = SECTION_SLOT_OFFSET
        if sections is not None:
            slot = int(sections[i])
            n_valid = 5 if bar.kind == COLUMN else 9
            if not 0 <= slot < n_valid:
                raise IndexError(f"section index {slot} invalid for bar {i} ({bar.kind})")
            feats[i, col:col + N_SECTION_SLOTS] = 0.0
            feats[i, col + slot] = 1.0
            col += N_SECTION_SLOTS
        feats[i, col] = 1.0 if bar.story == sk.stories else 0.0
        feats[i, col + 1] = boundary[i]
        feats[i, col + 2] = trib[i]

    story_of = np.array([b.story for b in sk.bars] + [0], dtype=np.int64)
    return StructuralGraph(
        node_features=feats,
        edges=edges,
        story_of=story_of,
        ground_index=ground,
        stories=sk.stories,
        story_height=sk.story_height,
    )


def _check_connected(n: int, edges: np.ndarray) -> None:
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    if not seen.all():
        missing = np.flatnonzero(~seen)[:5].tolist()
        raise DisconnectedSkeletonError(
            f"structural graph is disconnected (e.g. nodes {missing})")


def geodesic_distances(graph: StructuralGraph) -> np.ndarray:
    """All-pairs hop counts via breadth-first search."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    n = graph.n_nodes
    src, dst = graph.neighbor_arrays()
    m = csr_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    return shortest_path(m, method="BF" if n < 3 else "D", unweighted=True)


def read_back_bars(graph: StructuralGraph) -> list[tuple]:
    """Recover (p1, p2, kind, section slot) per bar node from the features."""
    out = []
    sized = graph.feature_dim == FEATURE_DIM_SIZED
    for i in range(graph.n_nodes):
        if i == graph.ground_index:
            continue
        f = graph.node_features[i]
        kind = COLUMN if f[6] == 0.0 else "beam"
        slot = None
        if sized:
            t = f[SECTION_SLOT_OFFSET:SECTION_SLOT_OFFSET + N_SECTION_SLOTS]
            slot = int(np.argmax(t))
        out.append((tuple(f[0:3]), tuple(f[3:6]), kind, slot))
    return out

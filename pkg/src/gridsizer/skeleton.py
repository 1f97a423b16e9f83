"""Building skeleton representation and procedural sampling.

A skeleton is a voxel-style arrangement: a connected set of grid cells is
grown on a rectangular base and replicated vertically story by story. Each
occupied cell contributes four corner columns and the four beams framing
its ceiling; bars shared between neighboring cells are deduplicated. Floor
panels tile the occupied cells at every ceiling level.

All lengths are in feet. Skeletons are immutable after construction and a
given (seed, config) pair always reproduces the identical object.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .sections import BEAM, COLUMN, N_BEAM_SECTIONS, N_COLUMN_SECTIONS

Point = tuple[float, float, float]


@dataclass(frozen=True)
class Bar:
    p1: Point
    p2: Point
    kind: str   # "column" | "beam"
    story: int  # 1-based; the pseudo ground node uses 0

    def __post_init__(self) -> None:
        if self.kind == COLUMN:
            if self.p1[:2] != self.p2[:2]:
                raise ValueError("column endpoints must share plan coordinates")
        elif self.kind == BEAM:
            if self.p1[2] != self.p2[2]:
                raise ValueError("beam endpoints must share elevation")
        else:
            raise ValueError(f"unknown bar kind: {self.kind!r}")
        if self.p1 == self.p2:
            raise ValueError("zero-length bar")

    @property
    def length(self) -> float:
        return float(np.linalg.norm(np.subtract(self.p2, self.p1)))


@dataclass(frozen=True)
class Panel:
    """Axis-aligned floor rectangle at the ceiling of `story`."""

    story: int
    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def area(self) -> float:
        return (self.x1 - self.x0) * (self.y1 - self.y0)


@dataclass(frozen=True)
class SkeletonConfig:
    spans: tuple[float, ...] = tuple(float(s) for s in range(28, 41))
    base_range: tuple[float, float] = (60.0, 400.0)
    story_range: tuple[int, int] = (1, 10)
    story_height: float = 16.0
    cell_keep_prob: float = 0.5

    def __post_init__(self) -> None:
        if not self.spans:
            raise ValueError("span set must not be empty")
        if any(not 28.0 <= s <= 40.0 for s in self.spans):
            raise ValueError("spans must lie in [28, 40] ft")
        lo, hi = self.base_range
        if not 60.0 <= lo <= hi <= 400.0:
            raise ValueError("base edge bounds must lie in [60, 400] ft")
        slo, shi = self.story_range
        if not 1 <= slo <= shi <= 10:
            raise ValueError("story count must lie in [1, 10]")


@dataclass(frozen=True)
class Skeleton:
    bars: tuple[Bar, ...]
    stories: int
    story_height: float
    spans_x: tuple[float, ...]
    spans_y: tuple[float, ...]
    cells: tuple[tuple[int, int], ...]  # occupied (ix, iy) grid cells
    panels: tuple[Panel, ...] = field(repr=False)

    @property
    def grid_x(self) -> tuple[float, ...]:
        return (0.0,) + tuple(np.cumsum(self.spans_x))

    @property
    def grid_y(self) -> tuple[float, ...]:
        return (0.0,) + tuple(np.cumsum(self.spans_y))

    @property
    def n_bars(self) -> int:
        return len(self.bars)


def _sample_spans(rng: np.random.Generator, spans: tuple[float, ...],
                  edge: float) -> list[float]:
    """Greedy fill: draw spans while the next one still fits on the edge."""
    out: list[float] = []
    total = 0.0
    while True:
        s = float(rng.choice(spans))
        if out and total + s > edge:
            break
        out.append(s)
        total += s
        if total + min(spans) > edge:
            break
    return out


def _grow_layout(rng: np.random.Generator, nx: int, ny: int,
                 keep_prob: float) -> set[tuple[int, int]]:
    """Depth-first growth over the grid, taking each neighbor with keep_prob."""
    start = (int(rng.integers(nx)), int(rng.integers(ny)))
    cells = {start}
    stack = [start]
    while stack:
        cx, cy = stack.pop()
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            nb = (cx + dx, cy + dy)
            if not (0 <= nb[0] < nx and 0 <= nb[1] < ny) or nb in cells:
                continue
            if rng.random() < keep_prob:
                cells.add(nb)
                stack.append(nb)
    return cells


def _build_bars(cells: list[tuple[int, int]], gx: list[float], gy: list[float],
                stories: int, h: float) -> tuple[list[Bar], list[Panel]]:
    bars: list[Bar] = []
    panels: list[Panel] = []
    for story in range(1, stories + 1):
        z0, z1 = (story - 1) * h, story * h
        seen_cols: set[tuple[float, float]] = set()
        seen_beams: set[tuple[Point, Point]] = set()
        for ix, iy in cells:
            x0, x1 = gx[ix], gx[ix + 1]
            y0, y1 = gy[iy], gy[iy + 1]
            for x, y in ((x0, y0), (x1, y0), (x1, y1), (x0, y1)):
                if (x, y) not in seen_cols:
                    seen_cols.add((x, y))
                    bars.append(Bar((x, y, z0), (x, y, z1), COLUMN, story))
            edges = (
                ((x0, y0, z1), (x1, y0, z1)),
                ((x1, y0, z1), (x1, y1, z1)),
                ((x0, y1, z1), (x1, y1, z1)),
                ((x0, y0, z1), (x0, y1, z1)),
            )
            for a, b in edges:
                if (a, b) not in seen_beams:
                    seen_beams.add((a, b))
                    bars.append(Bar(a, b, BEAM, story))
            panels.append(Panel(story, x0, y0, x1, y1))
    return bars, panels


def sample_skeleton(seed: int, cfg: SkeletonConfig = SkeletonConfig()) -> Skeleton:
    """Draw a random skeleton; identical output for identical (seed, cfg)."""
    rng = np.random.default_rng(seed)
    lo, hi = cfg.base_range
    edge_x = float(rng.uniform(lo, hi))
    edge_y = float(rng.uniform(lo, hi))
    spans_x = _sample_spans(rng, cfg.spans, edge_x)
    spans_y = _sample_spans(rng, cfg.spans, edge_y)
    stories = int(rng.integers(cfg.story_range[0], cfg.story_range[1] + 1))
    cells = sorted(_grow_layout(rng, len(spans_x), len(spans_y), cfg.cell_keep_prob))
    gx = [0.0] + list(np.cumsum(spans_x))
    gy = [0.0] + list(np.cumsum(spans_y))
    bars, panels = _build_bars(cells, gx, gy, stories, cfg.story_height)
    return Skeleton(
        bars=tuple(bars),
        stories=stories,
        story_height=cfg.story_height,
        spans_x=tuple(spans_x),
        spans_y=tuple(spans_y),
        cells=tuple(cells),
        panels=tuple(panels),
    )


def assign_random_sections(sk: Skeleton, seed: int) -> np.ndarray:
    """Uniform random section index per bar, within each bar's sub-library."""
    rng = np.random.default_rng(seed)
    out = np.empty(sk.n_bars, dtype=np.int64)
    for i, bar in enumerate(sk.bars):
        n = N_COLUMN_SECTIONS if bar.kind == COLUMN else N_BEAM_SECTIONS
        out[i] = rng.integers(n)
    return out


# JSON schema (also the dataset record's skeleton field):
#   stories        int, number of stories
#   story_height   float, ft
#   spans_x/spans_y  list[float], grid intervals in ft
#   cells          list[[ix, iy]], occupied grid cells
#   bars           list[{p1: [x,y,z], p2: [x,y,z], kind, story}], ft
#   panels         list[{story, x0, y0, x1, y1}], ft

def skeleton_to_dict(sk: Skeleton) -> dict:
    return {
        "stories": sk.stories,
        "story_height": sk.story_height,
        "spans_x": list(sk.spans_x),
        "spans_y": list(sk.spans_y),
        "cells": [list(c) for c in sk.cells],
        "bars": [{"p1": list(b.p1), "p2": list(b.p2), "kind": b.kind,
                  "story": b.story} for b in sk.bars],
        "panels": [{"story": p.story, "x0": p.x0, "y0": p.y0,
                    "x1": p.x1, "y1": p.y1} for p in sk.panels],
    }


def skeleton_from_dict(doc: dict) -> Skeleton:
    bars = tuple(Bar(tuple(float(v) for v in b["p1"]),
                     tuple(float(v) for v in b["p2"]),
                     b["kind"], int(b["story"])) for b in doc["bars"])
    panels = tuple(Panel(int(p["story"]), float(p["x0"]), float(p["y0"]),
                         float(p["x1"]), float(p["y1"]))
                   for p in doc["panels"])
    return Skeleton(
        bars=bars,
        stories=int(doc["stories"]),
        story_height=float(doc["story_height"]),
        spans_x=tuple(float(s) for s in doc["spans_x"]),
        spans_y=tuple(float(s) for s in doc["spans_y"]),
        cells=tuple((int(a), int(b)) for a, b in doc["cells"]),
        panels=panels,
    )

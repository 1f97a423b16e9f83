"""Load model: gravity cases, panel load distribution, lateral forces.

Surface loads on a floor panel are carried one-way. Three joists run
parallel to the panel's shorter edge and rest on the two longer edge
beams; the deck spans between the joists and the two shorter edge beams.
That splits a panel load of intensity q and area A into six joist-endpoint
point loads of qA/8 on the longer beams (at the quarter points) plus a
direct line-load share of qA/8 on each shorter beam. On square panels the
x-direction edges take the joist loads.

Lateral seismic forces use an equivalent-static procedure: base shear
V = Cs * W with Cs = SDS / (R / Ie) and SDS = (2/3) * Fa * Ss, distributed
over stories proportionally to story weight times height.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .sections import BEAM, COLUMN, Section
from .skeleton import Bar, Panel, Skeleton

# Share of a panel's area carried by each supporting beam.
LONG_EDGE_SHARE = 3.0 / 8.0   # via three joist endpoints
SHORT_EDGE_SHARE = 1.0 / 8.0  # direct deck strip
JOIST_FRACTIONS = (0.25, 0.5, 0.75)

# Short-period site coefficient for site class D, linearly interpolated.
_FA_TABLE_SITE_D = ((0.25, 1.6), (0.5, 1.4), (0.75, 1.2), (1.0, 1.1), (1.25, 1.0))


@dataclass(frozen=True)
class LoadModel:
    self_weight_factor: float = 1.1
    dead_psf: float = 24.0        # superimposed dead, non-roof panels
    live_psf: float = 100.0       # non-roof panels
    roof_live_psf: float = 20.0
    roof_dead_psf: float = 15.0
    cladding_plf: float = 410.0   # boundary beams, every story
    Ss: float = 1.8
    S1: float = 0.6
    R: float = 3.0                # response modifier
    Ie: float = 1.0               # importance factor
    mass_factor_dead: float = 1.0
    mass_factor_live: float = 0.1
    mass_factor_roof_live: float = 0.25
    # Combination factors: static = 1.2D + 1.6L + 0.5Lr, seismic = 0.9D + 1.0E.
    combo_static: tuple[float, float, float] = (1.2, 1.6, 0.5)
    combo_seismic: tuple[float, float] = (0.9, 1.0)

    def __post_init__(self) -> None:
        for name in ("dead_psf", "live_psf", "roof_live_psf", "roof_dead_psf",
                     "cladding_plf", "Ss", "S1"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass
class CaseLoads:
    """Member loads of one elementary case (all acting straight down).

    line: bar index -> uniform load in lb/ft.
    points: bar index -> list of (fraction along bar, force in lb).
    """

    line: dict[int, float] = field(default_factory=dict)
    points: dict[int, list[tuple[float, float]]] = field(default_factory=dict)

    def add_line(self, bar: int, w: float) -> None:
        self.line[bar] = self.line.get(bar, 0.0) + w

    def add_point(self, bar: int, frac: float, p: float) -> None:
        self.points.setdefault(bar, []).append((frac, p))

    def total(self, bars: tuple[Bar, ...]) -> float:
        t = sum(w * bars[i].length for i, w in self.line.items())
        t += sum(p for pts in self.points.values() for _, p in pts)
        return t


def _beam_key(bar: Bar) -> tuple:
    return (min(bar.p1, bar.p2), max(bar.p1, bar.p2))


def _beam_index(sk: Skeleton) -> dict[tuple, int]:
    return {_beam_key(b): i for i, b in enumerate(sk.bars) if b.kind == BEAM}


def panel_edge_shares(panel: Panel, story_height: float) -> list[tuple[tuple, float, bool]]:
    """Supporting edges of a panel as (beam key, area share, is_long_edge)."""
    z = panel.story * story_height
    dx = panel.x1 - panel.x0
    dy = panel.y1 - panel.y0
    ex = (((panel.x0, panel.y0, z), (panel.x1, panel.y0, z)),
          ((panel.x0, panel.y1, z), (panel.x1, panel.y1, z)))
    ey = (((panel.x0, panel.y0, z), (panel.x0, panel.y1, z)),
          ((panel.x1, panel.y0, z), (panel.x1, panel.y1, z)))
    long_edges, short_edges = (ex, ey) if dx >= dy else (ey, ex)
    out = [(e, LONG_EDGE_SHARE, True) for e in long_edges]
    out += [(e, SHORT_EDGE_SHARE, False) for e in short_edges]
    return out


def tributary_areas(sk: Skeleton) -> np.ndarray:
    """Per-bar carried panel area (ft^2); zero for columns."""
    idx = _beam_index(sk)
    areas = np.zeros(sk.n_bars)
    for panel in sk.panels:
        for key, share, _ in panel_edge_shares(panel, sk.story_height):
            areas[idx[key]] += share * panel.area
    return areas


def _edge_counts(sk: Skeleton) -> dict[tuple, int]:
    """2D plan edge -> number of occupied cells it borders."""
    gx, gy = sk.grid_x, sk.grid_y
    counts: dict[tuple, int] = {}
    for ix, iy in sk.cells:
        x0, x1, y0, y1 = gx[ix], gx[ix + 1], gy[iy], gy[iy + 1]
        for a, b in ((((x0, y0)), (x1, y0)), ((x1, y0), (x1, y1)),
                     ((x0, y1), (x1, y1)), ((x0, y0), (x0, y1))):
            key = (min(a, b), max(a, b))
            counts[key] = counts.get(key, 0) + 1
    return counts


def boundary_flags(sk: Skeleton) -> np.ndarray:
    """1 for bars on the layout perimeter.

    A beam is on the boundary when its plan edge borders exactly one
    occupied cell; a column when its plan vertex touches a boundary edge.
    """
    counts = _edge_counts(sk)
    boundary_edges = {e for e, c in counts.items() if c == 1}
    boundary_verts = {v for e in boundary_edges for v in e}
    flags = np.zeros(sk.n_bars)
    for i, bar in enumerate(sk.bars):
        if bar.kind == BEAM:
            key = (min(bar.p1[:2], bar.p2[:2]), max(bar.p1[:2], bar.p2[:2]))
            flags[i] = 1.0 if key in boundary_edges else 0.0
        else:
            flags[i] = 1.0 if bar.p1[:2] in boundary_verts else 0.0
    return flags


def _panel_case(sk: Skeleton, idx: dict[tuple, int], roof: bool,
                intensity: float) -> CaseLoads:
    case = CaseLoads()
    if intensity == 0.0:
        return case
    for panel in sk.panels:
        if (panel.story == sk.stories) != roof:
            continue
        w_total = intensity * panel.area
        for key, share, is_long in panel_edge_shares(panel, sk.story_height):
            bar = idx[key]
            if is_long:
                per_point = w_total * share / len(JOIST_FRACTIONS)
                for frac in JOIST_FRACTIONS:
                    case.add_point(bar, frac, per_point)
            else:
                case.add_line(bar, w_total * share / sk.bars[bar].length)
    return case


def build_gravity_cases(sk: Skeleton, sections: list[Section],
                        lm: LoadModel) -> dict[str, CaseLoads]:
    """Elementary gravity cases as member loads (lb, lb/ft, acting down)."""
    idx = _beam_index(sk)
    cases: dict[str, CaseLoads] = {}

    self_w = CaseLoads()
    for i, sec in enumerate(sections):
        self_w.add_line(i, sec.unit_weight * lm.self_weight_factor)
    cases["self_weight"] = self_w

    cases["dead_super"] = _panel_case(sk, idx, roof=False, intensity=lm.dead_psf)
    cases["live"] = _panel_case(sk, idx, roof=False, intensity=lm.live_psf)
    cases["roof_live"] = _panel_case(sk, idx, roof=True, intensity=lm.roof_live_psf)
    cases["roof_dead"] = _panel_case(sk, idx, roof=True, intensity=lm.roof_dead_psf)

    cladding = CaseLoads()
    flags = boundary_flags(sk)
    for i, bar in enumerate(sk.bars):
        if bar.kind == BEAM and flags[i]:
            cladding.add_line(i, lm.cladding_plf)
    cases["cladding"] = cladding
    return cases


DEAD_CASES = ("self_weight", "dead_super", "roof_dead", "cladding")


def story_gravity_totals(sk: Skeleton, sections: list[Section],
                         lm: LoadModel) -> dict[str, np.ndarray]:
    """Total dead / live / roof-live load per story (lb)."""
    K = sk.stories
    dead = np.zeros(K)
    live = np.zeros(K)
    roof_live = np.zeros(K)
    cases = build_gravity_cases(sk, sections, lm)

    def accumulate(case: CaseLoads, target: np.ndarray) -> None:
        for i, w in case.line.items():
            target[sk.bars[i].story - 1] += w * sk.bars[i].length
        for i, pts in case.points.items():
            target[sk.bars[i].story - 1] += sum(p for _, p in pts)

    for name in DEAD_CASES:
        accumulate(cases[name], dead)
    accumulate(cases["live"], live)
    accumulate(cases["roof_live"], roof_live)
    return {"dead": dead, "live": live, "roof_live": roof_live}


def story_seismic_weights(sk: Skeleton, sections: list[Section],
                          lm: LoadModel) -> np.ndarray:
    totals = story_gravity_totals(sk, sections, lm)
    return (lm.mass_factor_dead * totals["dead"]
            + lm.mass_factor_live * totals["live"]
            + lm.mass_factor_roof_live * totals["roof_live"])


def site_coefficient_fa(ss: float) -> float:
    xs = [r[0] for r in _FA_TABLE_SITE_D]
    ys = [r[1] for r in _FA_TABLE_SITE_D]
    return float(np.interp(ss, xs, ys))


def distribute_base_shear(v: float, weights: np.ndarray,
                          heights: np.ndarray) -> np.ndarray:
    """Vertical distribution F_k proportional to w_k * h_k (sums to v)."""
    wh = np.asarray(weights, dtype=float) * np.asarray(heights, dtype=float)
    return v * wh / wh.sum()


def equivalent_lateral_forces(sk: Skeleton, sections: list[Section],
                              lm: LoadModel) -> np.ndarray:
    """Per-story lateral force (lb); identical magnitude for X and Y."""
    if lm.Ie <= 0 or lm.R <= 0:
        raise ValueError("R and Ie must be positive")
    w = story_seismic_weights(sk, sections, lm)
    sds = (2.0 / 3.0) * site_coefficient_fa(lm.Ss) * lm.Ss
    cs = sds / (lm.R / lm.Ie)
    h = sk.story_height * np.arange(1, sk.stories + 1)
    return distribute_base_shear(cs * w.sum(), w, h)

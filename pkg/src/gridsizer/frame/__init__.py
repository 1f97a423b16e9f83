"""Linear-elastic frame analysis of a sized skeleton.

solve() assembles gravity and lateral load combinations, factorizes the
constrained stiffness once, and reports per-story drift ratios in X and Y
under the two seismic combinations plus the total steel mass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..loads import (DEAD_CASES, LoadModel, build_gravity_cases,
                     equivalent_lateral_forces)
from ..sections import Section, section_for
from ..skeleton import Skeleton
from .assembly import BACKEND
from .model import KIP_PER_LB, FrameModel, frame_from_skeleton, nodal_vector
from .solver import LinearSystem, SingularStructureError

COMBOS = ("static", "seismic_x", "seismic_y")


@dataclass
class SimResult:
    drift_x: np.ndarray                       # per story, seismic X combo
    drift_y: np.ndarray                       # per story, seismic Y combo
    mass_total: float                         # lb
    displacements: dict[str, np.ndarray] | None = None  # combo -> (nj, 6)

    def to_dict(self) -> dict:
        return {
            "drift_x": [float(v) for v in self.drift_x],
            "drift_y": [float(v) for v in self.drift_y],
            "mass_total": float(self.mass_total),
            "combos": list(COMBOS),
        }


def resolve_sections(sk: Skeleton, indices) -> list[Section]:
    return [section_for(bar.kind, int(i)) for bar, i in zip(sk.bars, indices)]


def total_mass(sk: Skeleton, sections: list[Section]) -> float:
    """Total steel weight in lb (length times unit weight over all bars)."""
    if len(sections) != sk.n_bars:
        raise ValueError("one section per bar required")
    return float(sum(b.length * s.unit_weight for b, s in zip(sk.bars, sections)))


def combination_vectors(model: FrameModel, sk: Skeleton,
                        sections: list[Section], lm: LoadModel,
                        ) -> tuple[dict[str, np.ndarray], np.ndarray]:
    """Nodal vectors per combination plus the story lateral forces (kip)."""
    cases = build_gravity_cases(sk, sections, lm)
    vec = {name: nodal_vector(model, case) for name, case in cases.items()}
    dead = sum(vec[name] for name in DEAD_CASES)
    c_d, c_l, c_lr = lm.combo_static
    s_d, _ = lm.combo_seismic
    combos = {
        "static": c_d * dead + c_l * vec["live"] + c_lr * vec["roof_live"],
        "seismic_x": s_d * dead,
        "seismic_y": s_d * dead,
    }
    story_forces = equivalent_lateral_forces(sk, sections, lm) * KIP_PER_LB
    return combos, story_forces


def solve(sk: Skeleton, section_indices, lm: LoadModel = LoadModel(),
          want_displacements: bool = False) -> SimResult:
    """Run the three combinations and extract story drifts and mass."""
    sections = resolve_sections(sk, section_indices)
    model = frame_from_skeleton(sk, sections)
    system = LinearSystem(model)
    combos, story_forces = combination_vectors(model, sk, sections, lm)
    s_e = lm.combo_seismic[1]

    h_in = sk.story_height * 12.0
    disp: dict[str, np.ndarray] = {}
    drifts: dict[str, np.ndarray] = {}
    for combo in COMBOS:
        masters = None
        if combo == "seismic_x":
            masters = {k: (s_e * float(f), 0.0) for k, f in enumerate(story_forces)}
        elif combo == "seismic_y":
            masters = {k: (0.0, s_e * float(f)) for k, f in enumerate(story_forces)}
        u, u_master = system.solve(combos[combo], master_forces=masters)
        disp[combo] = u
        if combo != "static":
            comp = 0 if combo == "seismic_x" else 1
            d = u_master[:, comp]
            drifts[combo] = np.diff(d, prepend=0.0) / h_in

    return SimResult(
        drift_x=drifts["seismic_x"],
        drift_y=drifts["seismic_y"],
        mass_total=total_mass(sk, sections),
        displacements=disp if want_displacements else None,
    )


__all__ = [
    "BACKEND", "COMBOS", "FrameModel", "LinearSystem", "SimResult",
    "SingularStructureError", "combination_vectors", "frame_from_skeleton",
    "nodal_vector", "resolve_sections", "solve", "total_mass",
]

"""Analysis model: joints, 12-DOF elements, supports, rigid diaphragms.

Internal units are kips and inches (coordinates converted from feet on
construction); member loads arrive in lb and lb/ft and are converted to
consistent nodal loads here. DOF order per joint: ux, uy, uz, rx, ry, rz.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..loads import CaseLoads
from ..sections import E_KSI, G_KSI, Section
from ..skeleton import Skeleton
from .assembly import rotation_matrices

IN_PER_FT = 12.0
KIP_PER_LB = 1e-3


@dataclass
class Diaphragm:
    story: int
    joints: list[int]
    master_xy: tuple[float, float]  # inches


@dataclass
class FrameModel:
    joints: np.ndarray               # (nj, 3) inches
    elements: np.ndarray             # (ne, 2) joint indices
    props: np.ndarray                # (ne, 6): A, Iy, Iz, J, E, G
    fixed: np.ndarray                # (nj, 6) bool
    diaphragms: list[Diaphragm] = field(default_factory=list)

    @property
    def n_joints(self) -> int:
        return len(self.joints)

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    def element_ends(self) -> tuple[np.ndarray, np.ndarray]:
        return (self.joints[self.elements[:, 0]],
                self.joints[self.elements[:, 1]])


def frame_from_skeleton(sk: Skeleton, sections: list[Section]) -> FrameModel:
    """Build the analysis model; element i corresponds to bar i."""
    if len(sections) != sk.n_bars:
        raise ValueError("one section per bar required")
    joint_ids: dict[tuple, int] = {}
    coords: list[tuple] = []

    def jid(p: tuple) -> int:
        key = (round(p[0], 9), round(p[1], 9), round(p[2], 9))
        if key not in joint_ids:
            joint_ids[key] = len(coords)
            coords.append(key)
        return joint_ids[key]

    elements = np.array(
        [(jid(b.p1), jid(b.p2)) for b in sk.bars], dtype=np.int64)
    joints = np.array(coords) * IN_PER_FT

    props = np.empty((sk.n_bars, 6))
    for i, sec in enumerate(sections):
        props[i] = (sec.A, sec.Iy, sec.Ix, sec.J, E_KSI, G_KSI)

    fixed = np.zeros((len(joints), 6), dtype=bool)
    fixed[np.abs(joints[:, 2]) < 1e-9, :] = True

    diaphragms = []
    for story in range(1, sk.stories + 1):
        z = story * sk.story_height * IN_PER_FT
        members = np.flatnonzero(np.abs(joints[:, 2] - z) < 1e-6).tolist()
        xy = joints[members, :2].mean(axis=0)
        diaphragms.append(Diaphragm(story, members, (float(xy[0]), float(xy[1]))))

    return FrameModel(joints, elements, props, fixed, diaphragms)


def nodal_vector(model: FrameModel, case: CaseLoads) -> np.ndarray:
    """Consistent nodal load vector (kip, kip-in) for downward member loads."""
    f = np.zeros(model.n_joints * 6)
    if not case.line and not case.points:
        return f
    xyz1, xyz2 = model.element_ends()
    rot = rotation_matrices(xyz1, xyz2)
    lengths = np.linalg.norm(xyz2 - xyz1, axis=1)

    def scatter(e: int, f_local: np.ndarray) -> None:
        f_global = np.zeros(12)
        for blk in range(4):
            f_global[3 * blk:3 * blk + 3] = rot[e].T @ f_local[3 * blk:3 * blk + 3]
        j1, j2 = model.elements[e]
        f[6 * j1:6 * j1 + 6] += f_global[:6]
        f[6 * j2:6 * j2 + 6] += f_global[6:]

    for e, w in case.line.items():
        L = lengths[e]
        q = rot[e] @ np.array([0.0, 0.0, -w * KIP_PER_LB / IN_PER_FT])
        fl = np.zeros(12)
        fl[0] = fl[6] = q[0] * L / 2
        fl[1] = fl[7] = q[1] * L / 2
        fl[5], fl[11] = q[1] * L**2 / 12, -q[1] * L**2 / 12
        fl[2] = fl[8] = q[2] * L / 2
        fl[4], fl[10] = -q[2] * L**2 / 12, q[2] * L**2 / 12
        scatter(e, fl)

    for e, pts in case.points.items():
        L = lengths[e]
        for frac, load in pts:
            p = rot[e] @ np.array([0.0, 0.0, -load * KIP_PER_LB])
            a = frac * L
            b = L - a
            fl = np.zeros(12)
            fl[0], fl[6] = p[0] * b / L, p[0] * a / L
            fl[1] = p[1] * b * b * (L + 2 * a) / L**3
            fl[7] = p[1] * a * a * (L + 2 * b) / L**3
            fl[5], fl[11] = p[1] * a * b * b / L**2, -p[1] * a * a * b / L**2
            fl[2] = p[2] * b * b * (L + 2 * a) / L**3
            fl[8] = p[2] * a * a * (L + 2 * b) / L**3
            fl[4], fl[10] = -p[2] * a * b * b / L**2, p[2] * a * a * b / L**2
            scatter(e, fl)
    return f

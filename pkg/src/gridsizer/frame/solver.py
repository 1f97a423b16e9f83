"""Constrained linear solver for the frame model.

Rigid diaphragms are handled by master-slave condensation: the in-plane
DOFs (ux, uy, rz) of every joint on a diaphragm are expressed through
three master DOFs appended to the reduced system. Supports are eliminated
(optionally with prescribed settlement values). The reduced operator is
factorized once and reused across load combinations.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.linalg import splu

from .assembly import element_stiffness_global
from .model import FrameModel

_DOF_NAMES = ("ux", "uy", "uz", "rx", "ry", "rz")
_SLAVED = (0, 1, 5)  # in-plane translations and rotation about z


class SingularStructureError(RuntimeError):
    """Stiffness matrix is singular; names the first unconstrained DOFs."""


class LinearSystem:
    def __init__(self, model: FrameModel):
        self.model = model
        self.n_full = 6 * model.n_joints
        self._build_constraints()
        self._assemble()
        self._factorize()

    def _build_constraints(self) -> None:
        m = self.model
        slave_of = {}  # joint -> diaphragm index
        for d_idx, d in enumerate(m.diaphragms):
            for j in d.joints:
                if m.fixed[j].any():
                    raise ValueError(f"joint {j} is both supported and on a diaphragm")
                slave_of[j] = d_idx

        red_of = -np.ones(self.n_full, dtype=np.int64)
        n_red = 0
        for j in range(m.n_joints):
            for c in range(6):
                if m.fixed[j, c] or (j in slave_of and c in _SLAVED):
                    continue
                red_of[6 * j + c] = n_red
                n_red += 1
        self.master_base = n_red
        n_red += 3 * len(m.diaphragms)
        self.n_red = n_red
        self.red_of = red_of

        rows, cols, vals = [], [], []
        for j in range(m.n_joints):
            for c in range(6):
                full = 6 * j + c
                if red_of[full] >= 0:
                    rows.append(full)
                    cols.append(red_of[full])
                    vals.append(1.0)
        for d_idx, d in enumerate(m.diaphragms):
            mb = self.master_base + 3 * d_idx
            mx, my = d.master_xy
            for j in d.joints:
                x, y = m.joints[j, 0], m.joints[j, 1]
                rows += [6 * j + 0, 6 * j + 0, 6 * j + 1, 6 * j + 1, 6 * j + 5]
                cols += [mb + 0, mb + 2, mb + 1, mb + 2, mb + 2]
                vals += [1.0, -(y - my), 1.0, (x - mx), 1.0]
        self.A = coo_matrix((vals, (rows, cols)),
                            shape=(self.n_full, self.n_red)).tocsr()

    def _assemble(self) -> None:
        m = self.model
        xyz1, xyz2 = m.element_ends()
        ke = element_stiffness_global(xyz1, xyz2, m.props)
        dof_map = np.empty((m.n_elements, 12), dtype=np.int64)
        for c in range(6):
            dof_map[:, c] = 6 * m.elements[:, 0] + c
            dof_map[:, 6 + c] = 6 * m.elements[:, 1] + c
        rows = np.repeat(dof_map, 12, axis=1).ravel()
        cols = np.tile(dof_map, (1, 12)).ravel()
        self.K_full = coo_matrix(
            (ke.ravel(), (rows, cols)), shape=(self.n_full, self.n_full)).tocsr()
        self.K_red = (self.A.T @ self.K_full @ self.A).tocsc()

    def _factorize(self) -> None:
        diag = self.K_red.diagonal()
        bad = np.flatnonzero(diag == 0.0)
        if len(bad):
            raise SingularStructureError(
                "singular stiffness matrix; unconstrained DOFs: "
                + ", ".join(self._dof_name(i) for i in bad[:8]))
        try:
            self.lu = splu(self.K_red)
        except RuntimeError as exc:
            raise SingularStructureError(
                f"singular stiffness matrix (mechanism): {exc}") from exc

    def _dof_name(self, red_idx: int) -> str:
        if red_idx >= self.master_base:
            d, c = divmod(red_idx - self.master_base, 3)
            return f"diaphragm {self.model.diaphragms[d].story} master "\
                   f"{('ux', 'uy', 'rz')[c]}"
        full = int(np.flatnonzero(self.red_of == red_idx)[0])
        return f"joint {full // 6} {_DOF_NAMES[full % 6]}"

    def solve(self, f_full: np.ndarray,
              master_forces: dict[int, tuple[float, float]] | None = None,
              prescribed: dict[tuple[int, int], float] | None = None,
              ) -> tuple[np.ndarray, np.ndarray]:
        """Solve one combination.

        f_full: (6*nj,) nodal loads. master_forces: diaphragm index ->
        (Fx, Fy) applied at the story master. prescribed: (joint, dof) ->
        settlement value on supported DOFs. Returns (u (nj, 6), u_master
        (n_diaphragms, 3)).
        """
        u_p = np.zeros(self.n_full)
        if prescribed:
            for (j, c), val in prescribed.items():
                if not self.model.fixed[j, c]:
                    raise ValueError(f"prescribed displacement on free DOF {j}/{c}")
                u_p[6 * j + c] = val
        rhs = self.A.T @ (f_full - (self.K_full @ u_p if prescribed else 0.0))
        if master_forces:
            for d_idx, (fx, fy) in master_forces.items():
                mb = self.master_base + 3 * d_idx
                rhs[mb] += fx
                rhs[mb + 1] += fy
        u_red = self.lu.solve(rhs)
        u_full = self.A @ u_red + u_p
        n_d = len(self.model.diaphragms)
        u_master = u_red[self.master_base:self.master_base + 3 * n_d]
        return u_full.reshape(-1, 6), u_master.reshape(n_d, 3)

    def reactions(self, u_full: np.ndarray, f_full: np.ndarray) -> np.ndarray:
        """Support forces, (nj, 6); zero rows off the supports."""
        r = (self.K_full @ u_full.ravel() - f_full).reshape(-1, 6)
        return np.where(self.model.fixed, r, 0.0)

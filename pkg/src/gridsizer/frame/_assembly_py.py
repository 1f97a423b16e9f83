"""Vectorized numpy fallback for the element-stiffness kernel.

Computes global 12x12 space-frame stiffness matrices for a batch of
two-node elements. Props columns: A, Iy, Iz, J, E, G (length units must
match the coordinates; the solver uses kip and inches).
"""

from __future__ import annotations

import numpy as np


def rotation_matrices(xyz1: np.ndarray, xyz2: np.ndarray) -> np.ndarray:
    """Local axis rows [x'; y'; z'] per element, (n, 3, 3).

    The auxiliary vector is global Z, switched to global X for members
    within 0.01 of vertical.
    """
    d = xyz2 - xyz1
    length = np.linalg.norm(d, axis=1)
    if np.any(length <= 0):
        raise ValueError("zero-length element")
    ex = d / length[:, None]
    vertical = np.abs(ex[:, 2]) > 0.99
    aux = np.where(vertical[:, None], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0])
    ez = np.cross(ex, aux)
    ez /= np.linalg.norm(ez, axis=1)[:, None]
    ey = np.cross(ez, ex)
    return np.stack([ex, ey, ez], axis=1)


def local_stiffness(length: np.ndarray, props: np.ndarray) -> np.ndarray:
    """Batched 12x12 local stiffness (Euler-Bernoulli, no shear deformation)."""
    n = len(length)
    A, Iy, Iz, J, E, G = (props[:, i] for i in range(6))
    L = length
    k = np.zeros((n, 12, 12))

    ax = E * A / L
    k[:, 0, 0] = k[:, 6, 6] = ax
    k[:, 0, 6] = k[:, 6, 0] = -ax

    tor = G * J / L
    k[:, 3, 3] = k[:, 9, 9] = tor
    k[:, 3, 9] = k[:, 9, 3] = -tor

    def bend(I, i_t1, i_r1, i_t2, i_r2, s):
        a = 12 * E * I / L**3
        b = 6 * E * I / L**2 * s
        c = 4 * E * I / L
        d2 = 2 * E * I / L
        k[:, i_t1, i_t1] = k[:, i_t2, i_t2] = a
        k[:, i_t1, i_t2] = k[:, i_t2, i_t1] = -a
        k[:, i_t1, i_r1] = k[:, i_r1, i_t1] = b
        k[:, i_t1, i_r2] = k[:, i_r2, i_t1] = b
        k[:, i_t2, i_r1] = k[:, i_r1, i_t2] = -b
        k[:, i_t2, i_r2] = k[:, i_r2, i_t2] = -b
        k[:, i_r1, i_r1] = k[:, i_r2, i_r2] = c
        k[:, i_r1, i_r2] = k[:, i_r2, i_r1] = d2

    bend(Iz, 1, 5, 7, 11, 1.0)   # bending about local z, displacement y
    bend(Iy, 2, 4, 8, 10, -1.0)  # bending about local y, displacement z
    return k


def element_stiffness_global(xyz1: np.ndarray, xyz2: np.ndarray,
                             props: np.ndarray) -> np.ndarray:
    length = np.linalg.norm(xyz2 - xyz1, axis=1)
    r = rotation_matrices(xyz1, xyz2)
    k_local = local_stiffness(length, props)
    n = len(length)
    t = np.zeros((n, 12, 12))
    for blk in range(4):
        t[:, 3 * blk:3 * blk + 3, 3 * blk:3 * blk + 3] = r
    return np.einsum("nji,njk,nkl->nil", t, k_local, t, optimize=True)

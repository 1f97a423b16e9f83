# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled element-stiffness kernel (same contract as _assembly_py)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def element_stiffness_global(cnp.ndarray[cnp.float64_t, ndim=2] xyz1,
                             cnp.ndarray[cnp.float64_t, ndim=2] xyz2,
                             cnp.ndarray[cnp.float64_t, ndim=2] props):
    cdef Py_ssize_t n = xyz1.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=3] out = np.zeros((n, 12, 12))
    cdef double[:, :] p1 = xyz1
    cdef double[:, :] p2 = xyz2
    cdef double[:, :] pr = props
    cdef double[:, :, :] o = out
    cdef double kl[12][12]
    cdef double kt[12][12]
    cdef double r[3][3]
    cdef double dx, dy, dz, L, A, Iy, Iz, J, E, G
    cdef double ax, tor, a, b, c, d2, nrm
    cdef double auxx, auxy, auxz
    cdef Py_ssize_t e, i, j, k, bi, bj

    for e in range(n):
        dx = p2[e, 0] - p1[e, 0]
        dy = p2[e, 1] - p1[e, 1]
        dz = p2[e, 2] - p1[e, 2]
        L = sqrt(dx * dx + dy * dy + dz * dz)
        if L <= 0.0:
            raise ValueError("zero-length element")
        # local axes: rows of r are x', y', z'
        r[0][0] = dx / L
        r[0][1] = dy / L
        r[0][2] = dz / L
        if fabs(r[0][2]) > 0.99:
            auxx, auxy, auxz = 1.0, 0.0, 0.0
        else:
            auxx, auxy, auxz = 0.0, 0.0, 1.0
        r[2][0] = r[0][1] * auxz - r[0][2] * auxy
        r[2][1] = r[0][2] * auxx - r[0][0] * auxz
        r[2][2] = r[0][0] * auxy - r[0][1] * auxx
        nrm = sqrt(r[2][0] ** 2 + r[2][1] ** 2 + r[2][2] ** 2)
        r[2][0] /= nrm
        r[2][1] /= nrm
        r[2][2] /= nrm
        r[1][0] = r[2][1] * r[0][2] - r[2][2] * r[0][1]
        r[1][1] = r[2][2] * r[0][0] - r[2][0] * r[0][2]
        r[1][2] = r[2][0] * r[0][1] - r[2][1] * r[0][0]

        A = pr[e, 0]
        Iy = pr[e, 1]
        Iz = pr[e, 2]
        J = pr[e, 3]
        E = pr[e, 4]
        G = pr[e, 5]

        for i in range(12):
            for j in range(12):
                kl[i][j] = 0.0

        ax = E * A / L
        kl[0][0] = ax; kl[6][6] = ax
        kl[0][6] = -ax; kl[6][0] = -ax
        tor = G * J / L
        kl[3][3] = tor; kl[9][9] = tor
        kl[3][9] = -tor; kl[9][3] = -tor

        # bending about z (displacement y): dofs 1,5,7,11
        a = 12.0 * E * Iz / (L * L * L)
        b = 6.0 * E * Iz / (L * L)
        c = 4.0 * E * Iz / L
        d2 = 2.0 * E * Iz / L
        kl[1][1] = a; kl[7][7] = a
        kl[1][7] = -a; kl[7][1] = -a
        kl[1][5] = b; kl[5][1] = b
        kl[1][11] = b; kl[11][1] = b
        kl[7][5] = -b; kl[5][7] = -b
        kl[7][11] = -b; kl[11][7] = -b
        kl[5][5] = c; kl[11][11] = c
        kl[5][11] = d2; kl[11][5] = d2

        # bending about y (displacement z): dofs 2,4,8,10, flipped coupling sign
        a = 12.0 * E * Iy / (L * L * L)
        b = -6.0 * E * Iy / (L * L)
        c = 4.0 * E * Iy / L
        d2 = 2.0 * E * Iy / L
        kl[2][2] = a; kl[8][8] = a
        kl[2][8] = -a; kl[8][2] = -a
        kl[2][4] = b; kl[4][2] = b
        kl[2][10] = b; kl[10][2] = b
        kl[8][4] = -b; kl[4][8] = -b
        kl[8][10] = -b; kl[10][8] = -b
        kl[4][4] = c; kl[10][10] = c
        kl[4][10] = d2; kl[10][4] = d2

        # kt = kl @ T where T is block-diagonal of r
        for i in range(12):
            for bj in range(4):
                for j in range(3):
                    kt[i][3 * bj + j] = (kl[i][3 * bj + 0] * r[0][j]
                                         + kl[i][3 * bj + 1] * r[1][j]
                                         + kl[i][3 * bj + 2] * r[2][j])
        # out = T^T @ kt
        for bi in range(4):
            for i in range(3):
                for j in range(12):
                    o[e, 3 * bi + i, j] = (r[0][i] * kt[3 * bi + 0][j]
                                           + r[1][i] * kt[3 * bi + 1][j]
                                           + r[2][i] * kt[3 * bi + 2][j])
    return out

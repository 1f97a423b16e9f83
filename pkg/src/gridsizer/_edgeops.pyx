# cython: boundscheck=False, wraparound=False, cdivision=True
"""Fused edge-message kernel for frozen-model inference.

Computes mean_j leaky_relu(recv[i] + send[j]) over each node's incoming
edges in one pass, without materializing per-edge arrays.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def edge_message_mean(cnp.ndarray[cnp.float64_t, ndim=2] recv,
                      cnp.ndarray[cnp.float64_t, ndim=2] send,
                      cnp.ndarray[cnp.int64_t, ndim=1] dst,
                      cnp.ndarray[cnp.int64_t, ndim=1] src,
                      double slope):
    cdef Py_ssize_t n = recv.shape[0]
    cdef Py_ssize_t f = recv.shape[1]
    cdef Py_ssize_t ne = dst.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((n, f))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] count = np.zeros(n)
    cdef double[:, :] r = recv
    cdef double[:, :] s = send
    cdef double[:, :] o = out
    cdef double[:] c = count
    cdef long[:] d = dst
    cdef long[:] q = src
    cdef Py_ssize_t e, j, di, si
    cdef double t

    for e in range(ne):
        di = d[e]
        si = q[e]
        c[di] += 1.0
        for j in range(f):
            t = r[di, j] + s[si, j]
            if t < 0.0:
                t *= slope
            o[di, j] += t
    for e in range(n):
        t = c[e]
        if t > 0.0:
            for j in range(f):
                o[e, j] /= t
    return out

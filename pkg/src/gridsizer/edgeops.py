"""Fused inference path for message passing, with backend selection.

Only the gradient-free (frozen inference) path uses this; training goes
through the recorded ops so backward stays exact. The numpy fallback is
mathematically identical up to summation-order rounding.
"""

from __future__ import annotations

import os

import numpy as np


def _edge_message_mean_py(recv: np.ndarray, send: np.ndarray,
                          dst: np.ndarray, src: np.ndarray,
                          slope: float) -> np.ndarray:
    edge = recv[dst] + send[src]
    np.maximum(edge, slope * edge, out=edge)
    counts = np.bincount(dst, minlength=recv.shape[0]).astype(np.float64)
    from scipy import sparse
    m = sparse.csr_matrix(
        (np.ones(len(dst)), (dst, np.arange(len(dst)))),
        shape=(recv.shape[0], len(dst)))
    out = m @ edge
    out /= np.maximum(counts, 1.0)[:, None]
    return out


if os.environ.get("GRIDSIZER_PURE_PY"):
    edge_message_mean = _edge_message_mean_py
    BACKEND = "python"
else:
    try:
        from ._edgeops import edge_message_mean  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        edge_message_mean = _edge_message_mean_py
        BACKEND = "python"

__all__ = ["edge_message_mean", "BACKEND"]

"""Small building blocks on top of the tensor ops."""

from __future__ import annotations

import numpy as np

from . import tensor as T
from .params import ModelParams


def linear_params(params: ModelParams, name: str, n_in: int, n_out: int,
                  rng: np.random.Generator) -> None:
    scale = np.sqrt(2.0 / n_in)
    params.new(f"{name}.W", rng.normal(0.0, scale, size=(n_in, n_out)))
    params.new(f"{name}.b", np.zeros(n_out))


def linear(params: ModelParams, name: str, x: T.Tensor) -> T.Tensor:
    return T.add(T.matmul(x, params[f"{name}.W"]), params[f"{name}.b"])


def slp(params: ModelParams, name: str, x: T.Tensor,
        slope: float = 0.01) -> T.Tensor:
    """Single-layer perceptron: affine map plus leaky ReLU."""
    return T.leaky_relu(linear(params, name, x), slope)


def split_weights(params: ModelParams, name: str,
                  sizes: list[int]) -> tuple[list[T.Tensor], T.Tensor]:
    """Row blocks of a weight matrix sized for a concatenated input.

    matmul-ing each input part with its block and summing equals feeding
    the concatenation through the full matrix, without materializing the
    concatenated array (the per-edge copies dominate message passing).
    """
    w = params[f"{name}.W"]
    blocks = []
    lo = 0
    for size in sizes:
        blocks.append(T.rows_slice(w, lo, lo + size))
        lo += size
    if lo != w.shape[0]:
        raise ValueError(f"{name}: split {sizes} does not cover {w.shape[0]} rows")
    return blocks, params[f"{name}.b"]

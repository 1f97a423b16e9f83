"""Minimal reverse-mode automatic differentiation over dense float64 arrays.

Each op records, on its output tensor, the parent tensors and one
vector-Jacobian closure per parent. backward() runs a topological sweep
accumulating gradients. Graph recording is skipped inside no_grad() or
when no input requires gradients, so frozen-model inference carries no
tape overhead.
"""

from __future__ import annotations

from contextlib import contextmanager

import numpy as np

_GRAD_ENABLED = True


@contextmanager
def no_grad():
    global _GRAD_ENABLED
    prev = _GRAD_ENABLED
    _GRAD_ENABLED = False
    try:
        yield
    finally:
        _GRAD_ENABLED = prev


def grad_enabled() -> bool:
    return _GRAD_ENABLED


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_parents", "_vjps")

    def __init__(self, data, requires_grad: bool = False):
        self.data = np.asarray(data, dtype=np.float64)
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad
        self._parents: tuple[Tensor, ...] = ()
        self._vjps: tuple = ()

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    def __repr__(self) -> str:
        return f"Tensor(shape={self.data.shape}, grad={self.grad is not None})"

    def item(self) -> float:
        return float(self.data)

    def zero_grad(self) -> None:
        self.grad = None

    def backward(self, seed: np.ndarray | None = None) -> None:
        if seed is None:
            if self.data.size != 1:
                raise ValueError("backward() without seed requires a scalar")
            seed = np.ones_like(self.data)
        order: list[Tensor] = []
        seen: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, processed = stack.pop()
            if processed:
                order.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if id(p) not in seen:
                    stack.append((p, False))
        self.grad = np.asarray(seed, dtype=np.float64).reshape(self.data.shape)
        for node in reversed(order):
            g = node.grad
            if g is None:
                continue
            for parent, vjp in zip(node._parents, node._vjps):
                contrib = vjp(g)
                if parent.grad is None:
                    parent.grad = np.zeros_like(parent.data)
                parent.grad += contrib


def _lift(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


def _result(data: np.ndarray, pairs: list[tuple[Tensor, object]]) -> Tensor:
    tracked = [(p, v) for p, v in pairs if p.requires_grad]
    if not _GRAD_ENABLED or not tracked:
        return Tensor(data)
    out = Tensor(data, requires_grad=True)
    out._parents = tuple(p for p, _ in tracked)
    out._vjps = tuple(v for _, v in tracked)
    return out


def _unbroadcast(g: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for ax, n in enumerate(shape):
        if n == 1 and g.shape[ax] != 1:
            g = g.sum(axis=ax, keepdims=True)
    return g


def _check_same_shape(a: Tensor, b: Tensor, op: str) -> None:
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ValueError(f"{op}: incompatible shapes {a.shape} and {b.shape}") from None


# ---------------------------------------------------------------- arithmetic

def add(a, b) -> Tensor:
    a, b = _lift(a), _lift(b)
    _check_same_shape(a, b, "add")
    return _result(a.data + b.data, [
        (a, lambda g: _unbroadcast(g, a.shape)),
        (b, lambda g: _unbroadcast(g, b.shape)),
    ])


def sub(a, b) -> Tensor:
    a, b = _lift(a), _lift(b)
    _check_same_shape(a, b, "sub")
    return _result(a.data - b.data, [
        (a, lambda g: _unbroadcast(g, a.shape)),
        (b, lambda g: _unbroadcast(-g, b.shape)),
    ])


def mul(a, b) -> Tensor:
    a, b = _lift(a), _lift(b)
    _check_same_shape(a, b, "mul")
    return _result(a.data * b.data, [
        (a, lambda g: _unbroadcast(g * b.data, a.shape)),
        (b, lambda g: _unbroadcast(g * a.data, b.shape)),
    ])


def scale(a, s: float) -> Tensor:
    a = _lift(a)
    return _result(a.data * s, [(a, lambda g: g * s)])


def matmul(a, b) -> Tensor:
    a, b = _lift(a), _lift(b)
    if a.shape[-1] != b.shape[0]:
        raise ValueError(f"matmul: inner dims differ, {a.shape} x {b.shape}")
    return _result(a.data @ b.data, [
        (a, lambda g: g @ b.data.T),
        (b, lambda g: a.data.T @ g),
    ])


def concat(parts: list, axis: int = 0) -> Tensor:
    ts = [_lift(p) for p in parts]
    data = np.concatenate([t.data for t in ts], axis=axis)
    offsets = np.cumsum([0] + [t.data.shape[axis] for t in ts])

    def make_vjp(i):
        sl = [slice(None)] * data.ndim
        sl[axis] = slice(int(offsets[i]), int(offsets[i + 1]))
        return lambda g: g[tuple(sl)]

    return _result(data, [(t, make_vjp(i)) for i, t in enumerate(ts)])


# ------------------------------------------------------------- row indexing

def rows_slice(a, lo: int, hi: int) -> Tensor:
    """Contiguous row slice a[lo:hi]."""
    a = _lift(a)

    def vjp(g):
        out = np.zeros_like(a.data)
        out[lo:hi] = g
        return out

    return _result(a.data[lo:hi], [(a, vjp)])


def gather_rows(a, idx: np.ndarray) -> Tensor:
    a = _lift(a)
    idx = np.asarray(idx, dtype=np.int64)

    def vjp(g):
        out = np.zeros_like(a.data)
        np.add.at(out, idx, g)
        return out

    return _result(a.data[idx], [(a, vjp)])


def row_update(a, idx: np.ndarray, rows) -> Tensor:
    """Copy of `a` with rows at `idx` replaced by `rows`."""
    a, rows = _lift(a), _lift(rows)
    idx = np.asarray(idx, dtype=np.int64)
    data = a.data.copy()
    data[idx] = rows.data

    def vjp_a(g):
        out = g.copy()
        out[idx] = 0.0
        return out

    return _result(data, [(a, vjp_a), (rows, lambda g: g[idx])])


# ------------------------------------------------------- segment reductions

def _segment_add(values: np.ndarray, seg: np.ndarray, n_seg: int) -> np.ndarray:
    """Row-group sums via a sparse aggregation product (beats np.add.at)."""
    if values.ndim == 1:
        return np.bincount(seg, weights=values, minlength=n_seg)
    from scipy import sparse
    m = sparse.csr_matrix((np.ones(len(seg)), (seg, np.arange(len(seg)))),
                          shape=(n_seg, len(seg)))
    return m @ values


def segment_sum(a, seg: np.ndarray, n_seg: int) -> Tensor:
    a = _lift(a)
    seg = np.asarray(seg, dtype=np.int64)
    data = _segment_add(a.data, seg, n_seg)
    return _result(data, [(a, lambda g: g[seg])])


def segment_mean(a, seg: np.ndarray, n_seg: int) -> Tensor:
    a = _lift(a)
    seg = np.asarray(seg, dtype=np.int64)
    counts = np.bincount(seg, minlength=n_seg).astype(np.float64)
    if np.any(counts == 0):
        raise ValueError("segment_mean: empty segment")
    data = _segment_add(a.data, seg, n_seg)
    data /= counts.reshape((-1,) + (1,) * (a.data.ndim - 1))

    def vjp(g):
        return (g / counts.reshape((-1,) + (1,) * (g.ndim - 1)))[seg]

    return _result(data, [(a, vjp)])


def segment_max(a, seg: np.ndarray, n_seg: int) -> Tensor:
    a = _lift(a)
    seg = np.asarray(seg, dtype=np.int64)
    data = np.full((n_seg,) + a.shape[1:], -np.inf)
    np.maximum.at(data, seg, a.data)
    hit = a.data == data[seg]
    # break ties toward the first row reaching the max
    first = np.zeros_like(hit)
    remaining = np.ones((n_seg,) + a.shape[1:], dtype=bool)
    for i in np.argsort(seg, kind="stable"):
        s = seg[i]
        sel = hit[i] & remaining[s]
        first[i] = sel
        remaining[s] &= ~sel

    def vjp(g):
        return np.where(first, g[seg], 0.0)

    return _result(data, [(a, vjp)])


# ------------------------------------------------------------ nonlinearities

def leaky_relu(a, slope: float = 0.01) -> Tensor:
    a = _lift(a)
    data = np.maximum(a.data, slope * a.data)  # slope < 1

    def vjp(g):
        return np.where(a.data > 0, g, slope * g)

    return _result(data, [(a, vjp)])


def sigmoid(a) -> Tensor:
    a = _lift(a)
    x = a.data
    data = np.where(x >= 0, 1.0 / (1.0 + np.exp(-np.abs(x))),
                    np.exp(-np.abs(x)) / (1.0 + np.exp(-np.abs(x))))
    return _result(data, [(a, lambda g: g * data * (1.0 - data))])


def softmax(a) -> Tensor:
    a = _lift(a)
    z = a.data - a.data.max(axis=-1, keepdims=True)
    e = np.exp(z)
    data = e / e.sum(axis=-1, keepdims=True)

    def vjp(g):
        dot = (g * data).sum(axis=-1, keepdims=True)
        return data * (g - dot)

    return _result(data, [(a, vjp)])


def log(a) -> Tensor:
    a = _lift(a)
    if np.any(a.data <= 0):
        raise ValueError("log: non-positive input")
    return _result(np.log(a.data), [(a, lambda g: g / a.data)])


def exp(a) -> Tensor:
    a = _lift(a)
    data = np.exp(a.data)
    return _result(data, [(a, lambda g: g * data)])


def absolute(a) -> Tensor:
    a = _lift(a)
    sign = np.sign(a.data)
    return _result(np.abs(a.data), [(a, lambda g: g * sign)])


def dropout(a, p: float, rng: np.random.Generator, train: bool) -> Tensor:
    """Inverted dropout; identity when eval or p == 0."""
    a = _lift(a)
    if not train or p == 0.0:
        return a
    if not 0.0 <= p < 1.0:
        raise ValueError("dropout probability must be in [0, 1)")
    mask = (rng.random(a.shape) >= p) / (1.0 - p)
    return _result(a.data * mask, [(a, lambda g: g * mask)])


# ------------------------------------------------------------------- reduce

def sum_all(a) -> Tensor:
    a = _lift(a)
    return _result(np.array(a.data.sum()),
                   [(a, lambda g: np.full(a.shape, float(g)))])


def mean_all(a) -> Tensor:
    a = _lift(a)
    n = a.data.size
    return _result(np.array(a.data.mean()),
                   [(a, lambda g: np.full(a.shape, float(g) / n))])


def reshape(a, shape: tuple[int, ...]) -> Tensor:
    a = _lift(a)
    return _result(a.data.reshape(shape),
                   [(a, lambda g: g.reshape(a.shape))])


def sum_top_k(a, k: int) -> Tensor:
    """Sum of the k largest entries of a 1-D tensor."""
    a = _lift(a)
    if a.data.ndim != 1:
        raise ValueError("sum_top_k expects a 1-D tensor")
    top = np.argsort(a.data)[::-1][:k]
    mask = np.zeros_like(a.data)
    mask[top] = 1.0
    return _result(np.array(a.data[top].sum()),
                   [(a, lambda g: float(g) * mask)])


# -------------------------------------------------------------------- losses

def l1_loss(pred, target) -> Tensor:
    pred, target = _lift(pred), _lift(target)
    _check_same_shape(pred, target, "l1_loss")
    return mean_all(absolute(sub(pred, target)))


def bce_loss(prob, labels, eps: float = 1e-7) -> Tensor:
    """Binary cross-entropy on probabilities (labels are constants)."""
    prob = _lift(prob)
    y = np.asarray(_lift(labels).data)
    p = np.clip(prob.data, eps, 1.0 - eps)
    data = np.array(-(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)).mean())

    def vjp(g):
        inner = np.where((prob.data > eps) & (prob.data < 1.0 - eps),
                         (p - y) / (p * (1.0 - p)), 0.0)
        return float(g) * inner / prob.data.size

    return _result(data, [(prob, vjp)])


# --------------------------------------------------- categorical relaxation

def gumbel_softmax_hard(logits, tau: float, rng: np.random.Generator) -> Tensor:
    """Row-wise one-hot sample; gradients flow as if the sample were soft.

    Forward takes the argmax over (logits + Gumbel noise) / tau per row and
    emits exact one-hots. The recorded vector-Jacobian is that of the soft
    sample (straight-through estimator).
    """
    logits = _lift(logits)
    if tau <= 0:
        raise ValueError("temperature must be positive")
    if not np.all(np.isfinite(logits.data)):
        raise ValueError("non-finite logits")
    u = rng.random(logits.shape)
    gumbel = -np.log(-np.log(np.clip(u, 1e-12, 1.0 - 1e-12)))
    z = (logits.data + gumbel) / tau
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    soft = e / e.sum(axis=-1, keepdims=True)
    hard = np.zeros_like(soft)
    idx = soft.argmax(axis=-1)
    np.put_along_axis(hard, idx[..., None], 1.0, axis=-1)

    def vjp(g):
        dot = (g * soft).sum(axis=-1, keepdims=True)
        return soft * (g - dot) / tau

    return _result(hard, [(logits, vjp)])

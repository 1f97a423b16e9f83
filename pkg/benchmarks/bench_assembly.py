#!/usr/bin/env python3
"""Benchmark: compiled element-stiffness kernel vs numpy fallback.

Times batched assembly for growing element counts and one full building
solve under each backend. Run after `pip install -e .`:

    python benchmarks/bench_assembly.py
"""

import time

import numpy as np

from gridsizer.frame import _assembly_py
from gridsizer.frame.assembly import BACKEND
from gridsizer.loads import LoadModel
from gridsizer.skeleton import SkeletonConfig, assign_random_sections, sample_skeleton

try:
    from gridsizer.frame import _kernels
except ImportError:
    _kernels = None


def time_fn(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def random_batch(n, seed=0):
    rng = np.random.default_rng(seed)
    xyz1 = rng.uniform(-500, 500, size=(n, 3))
    xyz2 = xyz1 + rng.uniform(30, 250, size=(n, 3))
    props = np.column_stack([
        rng.uniform(5, 60, n), rng.uniform(20, 2000, n),
        rng.uniform(20, 2000, n), rng.uniform(0.5, 3000, n),
        np.full(n, 29000.0), np.full(n, 11200.0)])
    return xyz1, xyz2, props


def bench_kernels():
    print(f"{'elements':>10} {'numpy (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}")
    for n in (100, 500, 2000, 10000):
        xyz1, xyz2, props = random_batch(n)
        t_py = time_fn(_assembly_py.element_stiffness_global, xyz1, xyz2, props)
        if _kernels is None:
            print(f"{n:>10} {t_py * 1e3:>12.2f} {'n/a':>14} {'n/a':>9}")
            continue
        t_c = time_fn(_kernels.element_stiffness_global, xyz1, xyz2, props)
        print(f"{n:>10} {t_py * 1e3:>12.2f} {t_c * 1e3:>14.2f} {t_py / t_c:>8.1f}x")


def bench_solve():
    import importlib
    import os

    sk = sample_skeleton(42, SkeletonConfig(story_range=(6, 6)))
    idx = assign_random_sections(sk, 1)
    lm = LoadModel()

    def run_with(pure: bool):
        os.environ["GRIDSIZER_PURE_PY"] = "1" if pure else ""
        import gridsizer.frame
        import gridsizer.frame.assembly
        importlib.reload(gridsizer.frame.assembly)
        importlib.reload(gridsizer.frame.solver)
        importlib.reload(gridsizer.frame)
        return time_fn(gridsizer.frame.solve, sk, idx, lm, repeat=3)

    import gridsizer.frame.solver
    t_py = run_with(True)
    print(f"\nfull solve, {sk.n_bars} bars: numpy backend {t_py * 1e3:.1f} ms", end="")
    if _kernels is not None:
        t_c = run_with(False)
        print(f", compiled backend {t_c * 1e3:.1f} ms ({t_py / t_c:.2f}x)")
    else:
        print()


if __name__ == "__main__":
    print(f"active backend: {BACKEND}")
    bench_kernels()
    bench_solve()

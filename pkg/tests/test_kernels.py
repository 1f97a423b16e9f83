"""Compiled assembly kernel agrees with the numpy fallback."""

import numpy as np
import pytest

from gridsizer.frame import assembly
from gridsizer.frame._assembly_py import element_stiffness_global as py_kernel


def random_elements(n, seed=0):
    rng = np.random.default_rng(seed)
    xyz1 = rng.uniform(-200, 200, size=(n, 3))
    offs = rng.uniform(-150, 150, size=(n, 3))
    # mix in exactly vertical and exactly horizontal members
    offs[: n // 3, :2] = 0.0
    offs[n // 3: 2 * n // 3, 2] = 0.0
    xyz2 = xyz1 + offs
    keep = np.linalg.norm(xyz2 - xyz1, axis=1) > 1.0
    xyz1, xyz2 = xyz1[keep], xyz2[keep]
    props = np.column_stack([
        rng.uniform(5, 60, len(xyz1)),       # A
        rng.uniform(20, 2000, len(xyz1)),    # Iy
        rng.uniform(20, 2000, len(xyz1)),    # Iz
        rng.uniform(0.5, 3000, len(xyz1)),   # J
        np.full(len(xyz1), 29000.0),
        np.full(len(xyz1), 11200.0),
    ])
    return xyz1, xyz2, props


@pytest.mark.skipif(assembly.BACKEND != "compiled",
                    reason="compiled kernel not built")
def test_backends_agree():
    from gridsizer.frame import _kernels
    xyz1, xyz2, props = random_elements(300)
    k_c = _kernels.element_stiffness_global(xyz1, xyz2, props)
    k_p = py_kernel(xyz1, xyz2, props)
    scale = np.abs(k_p).max()
    assert np.abs(k_c - k_p).max() / scale < 1e-13


def test_python_kernel_symmetry_and_rigid_modes():
    xyz1, xyz2, props = random_elements(50, seed=3)
    k = py_kernel(xyz1, xyz2, props)
    assert np.abs(k - k.transpose(0, 2, 1)).max() / np.abs(k).max() < 1e-12
    # rigid translation produces no force
    for axis in range(3):
        t = np.zeros(12)
        t[axis] = t[6 + axis] = 1.0
        f = k @ t
        assert np.abs(f).max() / np.abs(k).max() < 1e-12

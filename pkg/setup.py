"""Build script: compiles the optional frame-assembly extension.

The package works without the extension (a numpy fallback is selected at
import time); the build is marked optional so a missing compiler never
breaks installation.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "gridsizer.frame._kernels",
                ["src/gridsizer/frame/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            ),
            Extension(
                "gridsizer._edgeops",
                ["src/gridsizer/_edgeops.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                optional=True,
            ),
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)

"""Compile the Cython tree-sweep kernels.

The package works without the extension (a numpy fallback is selected at
import time), but solver runs are roughly an order of magnitude faster with
it.  Build in place with:

    python setup.py build_ext --inplace
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "efgsolve._kernels._core",
        ["src/efgsolve/_kernels/_core.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))

"""Build script: compiles the Cython hot-loop kernels when possible.

The package works without the extension (a pure-Python fallback is selected
at import time), but the large Monte Carlo runs are only practical with the
compiled core.
"""

import sys

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "hygiant._kernel_c",
                ["src/hygiant/_kernel_c.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    print("Cython not available; building pure-Python only", file=sys.stderr)

setup(ext_modules=ext_modules)

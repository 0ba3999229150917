import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "onebit_mimo._kernels",
                ["src/onebit_mimo/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Without Cython the package still installs; the numpy fallback kernels
    # are selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)

"""Build the optional Cython kernel; the package works without it."""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fall back to the pure-Python kernel
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("fospectra._kernels._ckernel", ["src/fospectra/_kernels/_ckernel.pyx"],
                   include_dirs=[numpy.get_include()], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)

"""Build hook for the optional compiled kernel.

The extension is marked optional: installation succeeds without a compiler
and the package falls back to the pure-Python kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("fftower._core", ["src/fftower/_core.pyx"], optional=True)],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

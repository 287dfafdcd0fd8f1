"""Build script: compiles the Cython kernel core when possible.

The package works without the extension (a pure-Python twin is selected at
import time), so any build failure here downgrades to a warning instead of
aborting the install.
"""
import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext = Extension(
        "quadbed._kernels._core",
        ["src/quadbed/_kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    ext_modules = cythonize([ext], language_level=3)
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(f"quadbed: skipping compiled kernels ({exc}); using pure-Python fallback\n")

setup(ext_modules=ext_modules)

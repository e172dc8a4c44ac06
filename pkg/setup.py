"""Build script: compiles the term-kernel extension when Cython is
available and falls back to the pure-Python kernels otherwise (the
package works either way; _poly_core picks the backend at import)."""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SPHHARM_SKIP_CYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("sphharm._poly_core_cy", ["src/sphharm/_poly_core_cy.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

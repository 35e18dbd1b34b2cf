"""Build script: compiles the optional elimination kernel when Cython is present.

The package is fully functional without the extension; confhodge.linalg
falls back to the pure-Python kernel at import time.  Set CONFHODGE_PURE=1
to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CONFHODGE_PURE"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("confhodge._elim", ["src/confhodge/_elim.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)

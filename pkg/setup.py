"""Build script: compiles the search kernel when Cython is available.

The package is fully functional without the extension; `hypfactor.oracle`
falls back to the pure-Python kernel at import time.  Set HYPFACTOR_NO_EXT=1
to skip compilation on purpose (useful for benchmarking the fallback).
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("HYPFACTOR_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/hypfactor/_search.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)

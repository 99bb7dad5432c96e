"""Build hook for the optional compiled kernel.

The package works without it; ``piflat.kernels`` falls back to the pure
Python implementation when the extension is missing.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PIFLAT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("piflat._ckernels", ["src/piflat/_ckernels.pyx"], optional=True)],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False},
        )

setup(ext_modules=ext_modules)

"""Builds the optional compiled refinement kernel.

If Cython or a C compiler is unavailable the package installs without it and
``pgi.graphcanon`` falls back to the pure-Python kernel.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("PGI_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("pgi._refine_ext", ["src/pgi/_refine_ext.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)

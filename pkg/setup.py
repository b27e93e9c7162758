"""Build hooks for the optional compiled census kernel.

The package works without the extension: bellhop.combinatorics falls back
to the pure-Python kernel if bellhop._fastcensus is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("bellhop._fastcensus", ["src/bellhop/_fastcensus.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)

"""Build hook for the optional compiled kernels.

The package works without them (pure-Python fallback); when Cython and a C
compiler are available the extension bordered_hfk._kernels is built.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/bordered_hfk/_kernels.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception:  # Cython missing: install the pure-Python package
    ext_modules = []

setup(ext_modules=ext_modules)

"""Builds the optional compiled kernels.  Without Cython or a C compiler the
package installs pure Python and falls back at import."""
from setuptools import setup

ext_modules = []
try:
    import numpy  # noqa: F401
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/wigf/estimate/_kernels.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False,
                             "wraparound": False, "cdivision": True},
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

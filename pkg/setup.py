"""Build script for the optional compiled force kernels.

If Cython or a C compiler is unavailable the extension is skipped and the
package falls back to the pure-numpy kernels at import time.
"""

from setuptools import setup

ext_modules = []
include_dirs = []

try:
    from Cython.Build import cythonize
    from setuptools import Extension
    import numpy

    ext_modules = cythonize(
        [Extension("semcloud.kernels._core", ["src/semcloud/kernels/_core.pyx"])],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    pass

setup(ext_modules=ext_modules, include_dirs=include_dirs)

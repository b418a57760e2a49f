import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python fallback kernels are selected at import time, so an
    # installation without Cython still works.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "kswave._kernels",
                ["src/kswave/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": 3,
        },
    )

setup(ext_modules=ext_modules)

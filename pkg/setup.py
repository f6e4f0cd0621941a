import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "tma._kernels._speedups",
                ["src/tma/_kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    sys.stderr.write("Cython unavailable; installing with pure-Python kernels only\n")

setup(ext_modules=ext_modules)

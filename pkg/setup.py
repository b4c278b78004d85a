import os

from setuptools import setup

ext_modules = []
if not os.environ.get("RUMINALG_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "ruminalg._poly_kernel_c",
                    ["src/ruminalg/_poly_kernel_c.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython: install with the pure-Python kernel only.
        ext_modules = []

setup(ext_modules=ext_modules)

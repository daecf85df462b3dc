"""Build script. The compiled kernel extension is optional: if Cython or a C
compiler is unavailable the install falls back to the pure-Python kernels."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("liechar._kernels_c", ["src/liechar/_kernels_c.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )
except Exception as exc:  # no Cython, no compiler, or cythonize failure
    print(f"liechar: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)

"""Builds the optional compiled kernels; without Cython the package is pure Python."""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("travlab.kernels._ckernels", ["src/travlab/kernels/_ckernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

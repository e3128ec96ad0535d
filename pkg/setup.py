"""Build hook for the optional compiled kernel.

The package works without the extension (pure-Python kernel); the extension
is built when Cython and a C toolchain are available.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("buyback.kernels._fast",
                   ["src/buyback/kernels/_fast.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

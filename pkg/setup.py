import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

PYX = os.path.join("src", "roughmap", "_ckernels.pyx")

# the compiled kernels are an optional accelerator; a source tree without
# Cython (or without the .pyx) still installs the pure-Python package
if cythonize is not None and os.path.exists(PYX):
    ext_modules = cythonize(
        [Extension("roughmap._ckernels", [PYX])],
        language_level=3,
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)

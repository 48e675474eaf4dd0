"""Build script: compiles the iteration kernel when Cython is available.

Without Cython the package still installs; the numpy fallback kernel is
selected at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("groverlab._kernel_cy", ["src/groverlab/_kernel_cy.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)

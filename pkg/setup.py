import sys

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("swapmatch._kernel", ["src/swapmatch/_kernel.pyx"])],
        language_level=3,
    )
else:
    # The package still works without the compiled kernels (pure-Python
    # fallback is selected at import), so a missing Cython is not fatal.
    print("warning: Cython not available, building without compiled kernels",
          file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules)

import sys

from setuptools import Extension, setup

# The compiled kernel is an optimization, not a requirement: primeavoid
# falls back to the pure-Python twin when the extension is absent.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("primeavoid._kernels", ["src/primeavoid/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    print("Cython not available; building without the compiled kernel", file=sys.stderr)

setup(ext_modules=ext_modules)

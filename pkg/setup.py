import numpy
from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to pure
# numpy/Python implementations when the extension is unavailable.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "sparsecross._core",
                ["src/sparsecross/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

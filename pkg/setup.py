import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "nfccoil._neumann",
        ["src/nfccoil/_neumann.pyx"],
        include_dirs=[np.get_include()],
        # no -ffast-math: compensated summation needs strict IEEE semantics
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))

import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FLAGRANK_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "flagrank._kernels",
                    ["src/flagrank/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)

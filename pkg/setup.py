import os

import numpy as np
from setuptools import Extension, setup

# The compiled kernels are optional: gale falls back to numpy when the
# extension is missing, so a failed cythonize must not abort the install.
ext_modules = []
if not os.environ.get("GALE_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "gale._ckernels",
                    ["src/gale/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

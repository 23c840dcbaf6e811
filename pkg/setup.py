import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GSP_PULLBACK_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:  # build without the compiled kernels
        pass
    else:
        ext_modules = cythonize(
            Extension(
                "gsp_pullback._kernels._ckernels",
                ["src/gsp_pullback/_kernels/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            ),
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

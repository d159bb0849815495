"""Build script: compiles the optional quadrature kernel extension.

Set WKB_SPECTRA_NO_EXT=1 to skip the extension entirely; the package then
runs on the pure numpy kernels.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("WKB_SPECTRA_NO_EXT"):
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "wkb_spectra._kernels",
                ["src/wkb_spectra/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

"""Builds the optional compiled RK4 core.  Without Cython or a compiler the
package still installs and runs on the numpy fallback."""
from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("sublorentz._kernels", ["src/sublorentz/_kernels.pyx"],
                   include_dirs=[np.get_include()])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

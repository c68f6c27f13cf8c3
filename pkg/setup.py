"""Builds the optional compiled kernel. Without Cython or a C++ compiler the
package still installs and runs on the pure-Python kernel."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("GALLAI_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("gallai._kernel", ["src/gallai/_kernel.pyx"],
                       extra_compile_args=["-O3"], language="c++")],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

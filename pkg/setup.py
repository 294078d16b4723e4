import os

from setuptools import setup

ext_modules = []
if os.environ.get("ZXAND_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("zxand._kernel", ["src/zxand/_kernel.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython: the pure-Python kernel is used
        ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import setup

ext_modules = []
if os.environ.get("QBOSON_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("qboson._kernels._ckernels", ["src/qboson/_kernels/_ckernels.pyx"])],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

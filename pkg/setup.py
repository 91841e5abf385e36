import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QBAILEY_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("qbailey._kernels", ["src/qbailey/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("gsp4kit._kernels", ["src/gsp4kit/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    # pure-Python fallback kernels are selected at import time
    extensions = []

setup(ext_modules=extensions)

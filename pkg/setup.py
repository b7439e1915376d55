from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    # optional=True: a failed compile falls back to the pure-Python kernels
    ext_modules = cythonize(
        [Extension("mmwidth._speedups", ["src/mmwidth/_speedups.pyx"], optional=True)],
        language_level="3",
    )

setup(ext_modules=ext_modules)

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qmod._core",
                ["src/qmod/_core.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-Python fallback kernel is selected at import time.
    ext_modules = []

for ext in ext_modules:
    ext.optional = True

setup(ext_modules=ext_modules)

"""Build script for the optional compiled split-search kernel.

The package is fully functional without the extension: the kernel selector
falls back to the numpy implementation when the compiled module is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rulescore._kernels._split",
                ["src/rulescore/_kernels/_split.pyx"],
            )
        ],
        language_level="3",
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"Skipping compiled kernel build ({exc}); pure-python fallback will be used")

setup(ext_modules=ext_modules)

"""Build hook for the optional compiled kernels.

The pure numpy implementation is always available; if Cython or a C
compiler is missing the extension is skipped and the package still installs.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("KLAB_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "kloosterman_lab._kernels",
                    ["src/kloosterman_lab/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"skipping compiled kernels: {exc}")
        ext_modules = []

setup(ext_modules=ext_modules)

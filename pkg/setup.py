"""Build script: compiles the optional Cython kernel extension.

Set FCMKIT_NO_EXT=1 to skip the extension entirely; the package then runs
on the pure-Python kernel fallback.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("FCMKIT_NO_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "fcmkit._kernels._core",
                ["src/fcmkit/_kernels/_core.pyx"],
                # -ffp-contract=off keeps the compiled kernels bit-aligned
                # with the pure-Python fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

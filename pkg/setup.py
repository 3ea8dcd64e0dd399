"""Build script: compiles the optional enumeration kernel extension.

The extension is a speedup only; if Cython or a C compiler is missing the
install falls back to the pure-Python kernel (credence._kernel_py), which is
bit-for-bit equivalent.  -ffp-contract=off keeps the C arithmetic identical
to CPython float arithmetic so both kernels produce the same doubles.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to a pure-Python install on compiler failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            print(f"warning: extension build failed ({exc}); "
                  "falling back to the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to the pure-Python kernel")


ext_modules = []
cmdclass = {}
if not os.environ.get("CREDENCE_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "credence._ckernel",
                    ["src/credence/_ckernel.pyx"],
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:
        print("warning: Cython not available; installing pure-Python kernel only")

setup(ext_modules=ext_modules, cmdclass=cmdclass)

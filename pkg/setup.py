"""Build config for the optional C backend of the log-Gamma kernel.

The extension is a nice-to-have: if Cython or a C compiler is missing the
install falls through to the pure-numpy backend (same algorithm, same API).
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class maybe_build_ext(build_ext):
    """build_ext that downgrades compilation failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"whitlab: skipping C backend ({exc!r}); numpy backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            print(f"whitlab: skipping {ext.name} ({exc!r}); numpy backend will be used")


extensions = []
if not os.environ.get("WHITLAB_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "whitlab._gammacore",
                    ["src/whitlab/_gammacore.pyx"],
                    include_dirs=[numpy.get_include()],
                )
            ],
            language_level=3,
        )
    except ImportError:  # pragma: no cover
        extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": maybe_build_ext})

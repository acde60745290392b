"""Build script: compiles the optional scoring kernel extension.

The package is fully functional without the extension; asplens.scoring
falls back to the pure-Python kernel when the compiled module is missing
or fails to build.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise continue without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or Cython missing
            print(f"warning: skipping compiled kernel ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc})")


def extensions():
    import os

    pyx = "src/asplens/scoring/_kernel.pyx"
    if not os.path.exists(pyx):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    return cythonize(
        [Extension("asplens.scoring._kernel", [pyx])],
        compiler_directives={"language_level": 3},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})

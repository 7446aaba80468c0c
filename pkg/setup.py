"""Build script for the optional compiled stabilization kernel.

The package is pure Python plus one Cython extension (sandpiles._fire).
The extension is a fast path only: if Cython or a C compiler is missing
the build falls back to the pure-Python kernel and everything still works.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, warn and continue otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: compiled kernel skipped ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); using pure-Python fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; using pure-Python kernel")
        return []
    ext = Extension(
        "sandpiles._fire",
        ["src/sandpiles/_fire.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})

"""Build script. The compiled mod-p elimination kernel is optional: if
Cython or a C compiler is unavailable the package installs anyway and the
pure-Python kernel is selected at import time."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("polyaug._augkern", ["src/polyaug/_augkern.pyx"],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"polyaug: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)

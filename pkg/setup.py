"""Build script: compiles the optional GF(2) elimination extension.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time), so a failed compile is downgraded
to a warning instead of aborting the install.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/blockvd/_gf2c.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - only hit on broken toolchains
    print(f"warning: skipping compiled kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)

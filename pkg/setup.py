import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# -ffp-contract=off keeps the C arithmetic bit-identical to the pure-Python
# fallback (no FMA contraction), which the backend parity test relies on.
extensions = [
    Extension(
        "mlqm._band_kernels",
        ["src/mlqm/_band_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
    if cythonize is not None
    else [],
)

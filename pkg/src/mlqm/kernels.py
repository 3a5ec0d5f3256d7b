"""Backend selection for the eigensolver hot loops.

The Cython extension is preferred when it imported cleanly; the pure-Python
fallback keeps the package fully functional without a C toolchain.  Set the
environment variable ``MLQM_PURE_PYTHON=1`` (before import) to force the
fallback; tests and the benchmark switch explicitly via ``use_backend``.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _band_kernels as _compiled
except ImportError:
    _compiled = None

_impl = _kernels_py if (os.environ.get("MLQM_PURE_PYTHON") or _compiled is None) else _compiled


def active_backend() -> str:
    """Name of the backend in use: "compiled" or "python"."""
    return _impl.BACKEND


def compiled_available() -> bool:
    return _compiled is not None


def use_backend(name: str) -> None:
    """Switch backends at runtime ("compiled" or "python").

    Intended for the parity tests and the benchmark; not thread-safe while
    a solve is in flight.
    """
    global _impl
    if name == "python":
        _impl = _kernels_py
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available in this installation")
        _impl = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


def sturm_count(diag, off_sq, sigma, pivmin):
    return _impl.sturm_count(diag, off_sq, sigma, pivmin)


def solve_shifted(diag, off, sigma, rhs, pivmin):
    return _impl.solve_shifted(diag, off, sigma, rhs, pivmin)

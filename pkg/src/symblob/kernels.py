"""Backend selection and the public eigensolver entry point.

The cyclic Jacobi kernel exists twice: a compiled Cython extension (preferred)
and a pure-Python fallback with identical arithmetic.  The backend is picked
once at import time; set ``SYMBLOB_KERNEL=python`` or ``SYMBLOB_KERNEL=cython``
to force a choice.  ``benchmarks/bench_kernels.py`` compares the two.
"""

import os

import numpy as np

from . import _jacobi_py
from .exceptions import NoConvergenceError
from .tolerances import JACOBI_MAX_SWEEPS

try:
    from . import _jacobi_cy
except ImportError:  # extension not built; pure fallback stays available
    _jacobi_cy = None

_FORCED = os.environ.get("SYMBLOB_KERNEL", "").strip().lower()
if _FORCED == "python":
    _IMPL = _jacobi_py
elif _FORCED == "cython":
    if _jacobi_cy is None:
        raise ImportError("SYMBLOB_KERNEL=cython but the compiled kernel is not built")
    _IMPL = _jacobi_cy
else:
    _IMPL = _jacobi_cy if _jacobi_cy is not None else _jacobi_py


def backend() -> str:
    """Name of the active kernel backend ("cython" or "python")."""
    return _IMPL.BACKEND


def get_backends() -> dict:
    """All importable backends, keyed by name (used by the benchmark)."""
    out = {"python": _jacobi_py}
    if _jacobi_cy is not None:
        out["cython"] = _jacobi_cy
    return out


def jacobi_eigh(a: np.ndarray, max_sweeps: int = JACOBI_MAX_SWEEPS, impl=None):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and orthonormal
    eigenvectors in the columns of ``v`` (``a @ v[:, k] == w[k] * v[:, k]``).
    The input is assumed symmetric; only its upper triangle is read.  Raises
    ``NoConvergenceError`` if the sweep cap is exhausted (does not happen for
    finite symmetric input at sane sizes).

    Output is deterministic: ascending stable sort, and each eigenvector is
    signed so that its largest-magnitude component is positive.
    """
    work = np.array(a, dtype=np.float64, order="C", copy=True)
    n = work.shape[0]
    v = np.eye(n, dtype=np.float64, order="C")
    sweeps = (impl or _IMPL).jacobi_sweeps(work, v, int(max_sweeps))
    if sweeps < 0:
        raise NoConvergenceError(
            f"Jacobi eigensolver did not converge in {max_sweeps} sweeps (dim {n})"
        )
    w = np.diagonal(work).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for j in range(n):
        col = v[:, j]
        k = int(np.argmax(np.abs(col)))
        if col[k] < 0.0:
            np.negative(col, out=col)
    return w, v

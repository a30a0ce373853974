"""Dense kernels for small symmetric/antisymmetric matrices.

Everything downstream (symplectic factorizations, blobs, Gaussian states) is
built on these few operations.  All functions are pure, operate on float64
``numpy`` arrays, and route every spectral computation through the in-house
Jacobi kernel so results are deterministic for a given input.
"""

import numpy as np

from . import tolerances as tol
from .exceptions import (
    DimensionCapError,
    NonSymmetricError,
    NotPositiveDefiniteError,
)
from .kernels import jacobi_eigh


def max_abs(a: np.ndarray) -> float:
    """Max-norm of an array (0.0 for empty input)."""
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def as_square(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a float64 square matrix with finite entries."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def symmetry_defect(a: np.ndarray) -> float:
    """Relative max-norm asymmetry |A - A^T| / (1 + |A|)."""
    return max_abs(a - a.T) / (1.0 + max_abs(a))


def require_symmetric(a, name: str = "matrix") -> np.ndarray:
    """Validate symmetry within SYM_TOL and return the symmetrized copy."""
    m = as_square(a, name)
    if symmetry_defect(m) > tol.SYM_TOL:
        raise NonSymmetricError(
            f"{name} is not symmetric: relative defect {symmetry_defect(m):.3e} "
            f"exceeds {tol.SYM_TOL:.1e}"
        )
    return 0.5 * (m + m.T)


def eigh(a, name: str = "matrix"):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.

    Satisfies ``a @ v = v @ diag(w)`` and ``v.T @ v = I`` within EIG_TOL
    relative to the input scale.
    """
    m = require_symmetric(a, name)
    return jacobi_eigh(m)


def eigvalsh(a, name: str = "matrix") -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix."""
    return eigh(a, name)[0]


def _spd_eigh(a, name: str):
    m = require_symmetric(a, name)
    w, v = jacobi_eigh(m)
    floor = tol.PD_TOL * max(1.0, max_abs(m))
    if w[0] <= floor:
        raise NotPositiveDefiniteError(
            f"{name} is not positive definite: smallest eigenvalue {w[0]:.3e}"
        )
    return w, v


def require_spd(a, name: str = "matrix") -> np.ndarray:
    """Validate symmetric positive definiteness; return the symmetrized copy."""
    m = require_symmetric(a, name)
    _spd_eigh(m, name)
    return m


def _spd_function(a, fn, name: str) -> np.ndarray:
    w, v = _spd_eigh(a, name)
    out = (v * fn(w)) @ v.T
    return 0.5 * (out + out.T)


def sqrt_spd(a, name: str = "matrix") -> np.ndarray:
    """Positive square root of a symmetric positive definite matrix."""
    return _spd_function(a, np.sqrt, name)


def invsqrt_spd(a, name: str = "matrix") -> np.ndarray:
    """Inverse positive square root of an SPD matrix."""
    return _spd_function(a, lambda w: 1.0 / np.sqrt(w), name)


def inv_spd(a, name: str = "matrix") -> np.ndarray:
    """Inverse of an SPD matrix (SPD again, computed spectrally)."""
    return _spd_function(a, lambda w: 1.0 / w, name)


def det_spd(a, name: str = "matrix") -> float:
    """Determinant of an SPD matrix as the product of its eigenvalues."""
    w, _ = _spd_eigh(a, name)
    return float(np.prod(w))


def eigvals_general(a, dim_cap: int = tol.DIM_CAP) -> np.ndarray:
    """Eigenvalues of a product J @ M with M symmetric positive definite.

    Such products have purely imaginary spectrum; the values are recovered
    from the antisymmetric conjugate K = M^{1/2} J M^{1/2} via one symmetric
    eigendecomposition of K K^T, with no nonsymmetric solver involved.
    Returns the complex eigenvalues interleaved as
    ``[+i*l1, -i*l1, +i*l2, ...]`` with ``l1 >= l2 >= ...``.
    """
    m = as_square(a, "matrix")
    dim = m.shape[0]
    if dim > dim_cap:
        raise DimensionCapError(f"dimension {dim} exceeds the cap {dim_cap}")
    if dim % 2:
        raise ValueError("J-product matrices have even dimension")
    n = dim // 2
    j = np.zeros((dim, dim))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    sym = -j @ m  # A = J M  =>  M = J^{-1} A = -J A
    lams = _spectrum_of_j_conjugate(sym, "derived symmetric factor")
    out = np.empty(2 * n, dtype=np.complex128)
    out[0::2] = 1j * lams
    out[1::2] = -1j * lams
    return out


def _spectrum_of_j_conjugate(m, name: str) -> np.ndarray:
    """Moduli of the (imaginary) eigenvalues of J @ M for SPD M, descending."""
    m = require_spd(m, name)
    dim = m.shape[0]
    n = dim // 2
    j = np.zeros((dim, dim))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    r = sqrt_spd(m, name)
    k = r @ j @ r
    w, _ = eigh(k @ k.T, "antisymmetric conjugate squared")
    w = np.clip(w, 0.0, None)
    paired = np.sqrt(0.5 * (w[0::2] + w[1::2]))
    return paired[::-1].copy()  # descending


def random_spd(dim: int, seed, eig_range=(0.1, 10.0)) -> np.ndarray:
    """Seeded random SPD matrix with eigenvalues log-uniform in ``eig_range``.

    The orthogonal frame comes from the eigenvectors of a random symmetric
    matrix, so conditioning is bounded by ``eig_range`` by construction.
    """
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim))
    _, q = eigh(g + g.T, "random symmetric seed")
    lo, hi = eig_range
    d = np.exp(rng.uniform(np.log(lo), np.log(hi), size=dim))
    m = (q * d) @ q.T
    return 0.5 * (m + m.T)

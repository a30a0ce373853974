"""Ellipsoids, quantum blobs, capacities, admissibility, sections, projections.

An ellipsoid is the set (z - z0)^T F (z - z0) <= hbar with F symmetric
positive definite; a quantum blob is the image of the ball of radius
sqrt(hbar) under a symplectic map (plus a translation), i.e. the ellipsoid
with F = (S S^T)^{-1}.  Recognition, capacity, and admissibility are all
spectral: they read off the symplectic spectrum of F.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .exceptions import (
    CapacityMismatchError,
    DegeneratePlaneError,
    EmptyIndexSetError,
    IndexOutOfRangeError,
    InternalInconsistencyError,
)
from .matcore import eigh, inv_spd, max_abs, require_spd
from .sympcore import (
    SymplecticPlane,
    freeze,
    random_symplectic,
    require_symplectic,
    standard_j,
    symplectic_inverse,
)
from .williamson import symplectic_spectrum, williamson_diagonalize

_BOUNDARY_BAND = 1e-6  # normalized margin below which route disagreement is numerical


def _check_center(center, dim: int) -> np.ndarray:
    c = np.asarray(center, dtype=np.float64).ravel()
    if c.size != dim:
        raise ValueError(f"center has length {c.size}, expected {dim}")
    if not np.all(np.isfinite(c)):
        raise ValueError("center contains non-finite entries")
    return c


@dataclass(frozen=True)
class Ellipsoid:
    """Phase-space ellipsoid {z : (z - center)^T f (z - center) <= hbar}."""

    center: np.ndarray
    f: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        f = require_spd(self.f, "shape matrix")
        if f.shape[0] % 2:
            raise ValueError("phase-space dimension must be even")
        if not self.hbar > 0.0:
            raise ValueError("hbar must be positive")
        object.__setattr__(self, "f", freeze(f))
        object.__setattr__(self, "center", freeze(_check_center(self.center, f.shape[0])))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.f.shape[0] // 2

    def contains(self, z, slack: float = 0.0) -> bool:
        d = np.asarray(z, dtype=np.float64).ravel() - self.center
        return float(d @ self.f @ d) <= self.hbar + slack

    def boundary_points(self, count: int, seed) -> np.ndarray:
        """``count`` deterministic points on the boundary (rows), via random rays."""
        rng = np.random.default_rng(seed)
        d = rng.standard_normal((count, 2 * self.n))
        q = np.einsum("ij,jk,ik->i", d, self.f, d)
        return self.center + d * np.sqrt(self.hbar / q)[:, None]


def ball(n: int, hbar: float = 1.0, center=None) -> Ellipsoid:
    """The ball of radius sqrt(hbar): the ellipsoid with F = I."""
    c = np.zeros(2 * n) if center is None else center
    return Ellipsoid(center=c, f=np.eye(2 * n), hbar=hbar)


@dataclass(frozen=True)
class QuantumBlob:
    """Image of the radius-sqrt(hbar) ball under z -> S z + center, S symplectic."""

    center: np.ndarray
    s: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        s = require_symplectic(self.s, "blob map")
        object.__setattr__(self, "s", freeze(s))
        object.__setattr__(self, "center", freeze(_check_center(self.center, s.shape[0])))
        if not self.hbar > 0.0:
            raise ValueError("hbar must be positive")
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.s.shape[0] // 2


def random_blob(n: int, seed, hbar: float = 1.0) -> QuantumBlob:
    """Seeded random centered quantum blob."""
    return QuantumBlob(center=np.zeros(2 * n), s=random_symplectic(n, seed), hbar=hbar)


def blob_to_ellipsoid(q: QuantumBlob) -> Ellipsoid:
    """The blob as an ellipsoid: F = (S S^T)^{-1}, same center and hbar."""
    return Ellipsoid(center=q.center, f=inv_spd(q.s @ q.s.T), hbar=q.hbar)


def is_quantum_blob(e: Ellipsoid, window: float = tol.BLOB_TOL) -> bool:
    """Spectral recognition: E is a blob iff every symplectic eigenvalue of F is 1.

    Equivalently the rescaled matrix F / hbar has spectrum (1/hbar, ...); the
    test window is ``window`` around 1.
    """
    lams = symplectic_spectrum(e.f)
    return bool(np.max(np.abs(lams - 1.0)) <= window)


def _section_form(e: Ellipsoid, plane: SymplecticPlane, matrix: np.ndarray) -> float:
    if plane.u.size != 2 * e.n:
        raise ValueError(f"plane lives in dimension {plane.u.size}, ellipsoid in {2 * e.n}")
    b = plane.basis_matrix()
    m2 = b.T @ matrix @ b
    det = float(m2[0, 0] * m2[1, 1] - m2[0, 1] * m2[1, 0])
    if det <= 0.0:
        raise DegeneratePlaneError("plane section produced a non-positive form")
    return det


def section_area(e: Ellipsoid, plane: SymplecticPlane) -> float:
    """Euclidean area of the central section of E by the plane through its center.

    With B the orthonormal 2n x 2 basis matrix this is pi*hbar/sqrt(det(B^T F B)).
    """
    return math.pi * e.hbar / math.sqrt(_section_form(e, plane, e.f))


def projection_area(e: Ellipsoid, plane: SymplecticPlane) -> float:
    """Euclidean area of the orthogonal shadow of E on the plane:
    pi*hbar*sqrt(det(B^T F^{-1} B))."""
    return math.pi * e.hbar * math.sqrt(_section_form(e, plane, inv_spd(e.f)))


def gromov_width(e: Ellipsoid) -> float:
    """Linear symplectic capacity pi*hbar / l_max with l_max the largest
    symplectic eigenvalue of F; equals pi*R_1^2 for the smallest normal-form
    radius R_1 = sqrt(hbar / l_max).  Translation invariant."""
    return math.pi * e.hbar / float(symplectic_spectrum(e.f)[0])


def williamson_radii(e: Ellipsoid) -> np.ndarray:
    """Normal-form radii R_j = sqrt(hbar / l_j), sorted increasing."""
    return np.sqrt(e.hbar / symplectic_spectrum(e.f))[::-1].copy()


def is_admissible(e: Ellipsoid) -> bool:
    """Whether E contains a quantum blob: capacity >= pi*hbar, equivalently
    every symplectic eigenvalue of F is <= 1.  Both routes are computed and
    must agree (they read the same spectrum, so they cannot drift apart)."""
    l_max = float(symplectic_spectrum(e.f)[0])
    by_capacity = math.pi * e.hbar / l_max >= math.pi * e.hbar * (1.0 - tol.ADM_TOL)
    by_spectrum = l_max <= 1.0 + tol.ADM_TOL
    if by_capacity != by_spectrum:
        raise InternalInconsistencyError(
            f"capacity and spectral admissibility disagree at l_max={l_max!r}"
        )
    return by_spectrum


@dataclass(frozen=True)
class AdmissibilityConditions:
    """The four equivalent uncertainty conditions, evaluated independently.

    a: Sigma + (i hbar / 2) J is Hermitian positive semidefinite
    b: F^{-1} + i J is Hermitian positive semidefinite
    c: every |eigenvalue| of J Sigma is >= hbar / 2
    d: every |eigenvalue| of J F is <= 1
    """

    a: bool
    b: bool
    c: bool
    d: bool

    @property
    def admissible(self) -> bool:
        return self.d


def _hermitian_min_eig(sym_part: np.ndarray, antisym_part: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian matrix sym_part + i*antisym_part,
    via its doubled real symmetric embedding [[A, -B], [B, A]]."""
    emb = np.block([[sym_part, -antisym_part], [antisym_part, sym_part]])
    w, _ = eigh(emb, "hermitian embedding")
    return float(w[0])


def admissibility_conditions(e: Ellipsoid) -> AdmissibilityConditions:
    """Evaluate the four uncertainty conditions on an ellipsoid's covariance data.

    Sigma is (hbar/2) F^{-1}.  The four booleans agree mathematically; inputs
    sitting exactly on the admissibility boundary may flip individual numeric
    routes, in which case (when every normalized margin is inside the boundary
    band) the spectral route (d) is authoritative.  A disagreement outside the
    band raises InternalInconsistencyError, since it can only mean a bug.
    """
    half_h = 0.5 * e.hbar
    f_inv = inv_spd(e.f)
    sigma = half_h * f_inv
    n = e.n
    j = standard_j(n)

    eig_a = _hermitian_min_eig(sigma, half_h * j)
    eig_b = _hermitian_min_eig(f_inv, j)
    spec_sigma = symplectic_spectrum(sigma)
    spec_f = symplectic_spectrum(e.f)

    cond_a = eig_a >= -tol.HERM_TOL * max_abs(sigma)
    cond_b = eig_b >= -tol.HERM_TOL * max_abs(f_inv)
    cond_c = bool(np.min(spec_sigma) >= half_h * (1.0 - tol.ADM_TOL))
    cond_d = bool(np.max(spec_f) <= 1.0 + tol.ADM_TOL)

    flags = (cond_a, cond_b, cond_c, cond_d)
    if len(set(flags)) > 1:
        margins = (
            eig_a / max(half_h, max_abs(sigma)),
            eig_b / max(1.0, max_abs(f_inv)),
            float(np.min(spec_sigma)) / half_h - 1.0,
            1.0 - float(np.max(spec_f)),
        )
        if max(abs(m) for m in margins) <= _BOUNDARY_BAND:
            flags = (cond_d,) * 4
        else:
            raise InternalInconsistencyError(
                f"uncertainty conditions disagree: flags={flags}, margins={margins}"
            )
    return AdmissibilityConditions(*flags)


def companion_blob(e: Ellipsoid) -> QuantumBlob:
    """The canonical concentric blob inside an admissible ellipsoid of capacity
    exactly pi*hbar.

    Any Williamson normalizer S of F gives the blob S^{-1}(ball); normalizers
    differ by a symplectic rotation, which fixes the ball, so the blob is
    well defined.  Raises CapacityMismatchError when the capacity is off.
    """
    width = gromov_width(e)
    target = math.pi * e.hbar
    if abs(width - target) > tol.CAP_TOL * target:
        raise CapacityMismatchError(
            f"capacity {width!r} differs from pi*hbar={target!r} beyond tolerance"
        )
    wf = williamson_diagonalize(e.f)
    return QuantumBlob(center=e.center, s=symplectic_inverse(wf.s), hbar=e.hbar)


def _mode_coords(n: int, indices) -> list:
    idx = sorted(set(int(i) for i in indices))
    if not idx:
        raise EmptyIndexSetError("at least one mode index is required")
    for i in idx:
        if not 1 <= i <= n:
            raise IndexOutOfRangeError(f"mode index {i} outside 1..{n}")
    return [i - 1 for i in idx] + [n + i - 1 for i in idx]


def coordinate_subspace_section(source, indices) -> Ellipsoid:
    """Exact intersection with the coordinate symplectic subspace of the given modes.

    The subspace is span{x_j, p_j : j in indices}; restricting the quadratic
    form to it keeps the principal submatrix of F on those coordinates, so the
    section is the sub-phase-space ellipsoid with that submatrix.  The result
    is again a quantum blob precisely when the source blob decouples across
    the retained/dropped mode partition (check with ``is_quantum_blob``).
    """
    e = blob_to_ellipsoid(source) if isinstance(source, QuantumBlob) else source
    coords = _mode_coords(e.n, indices)
    sub = e.f[np.ix_(coords, coords)]
    return Ellipsoid(center=e.center[coords], f=sub, hbar=e.hbar)


def blob_volume(q: QuantumBlob) -> float:
    """Phase-space volume (pi*hbar)^n / n!; independent of S since symplectic
    maps preserve volume."""
    return (math.pi * q.hbar) ** q.n / math.factorial(q.n)


def quant_manifold_dim(n: int) -> int:
    """Dimension n(n+3) of the manifold of quantum blobs in n degrees of freedom."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * (n + 3)

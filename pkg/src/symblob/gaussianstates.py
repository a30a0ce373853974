"""Gaussian pure/mixed states, their phase-space Gaussians, and smoothing.

A centered, normalized Gaussian wavefunction is parameterized by real
symmetric n x n matrices (X, Y) with X > 0:

    psi(u) = (det X / (pi hbar)^n)^{1/4} exp(-(1/2 hbar) u^T (X + iY) u)

Its phase-space transform is (1/pi hbar)^n exp(-z^T G z / hbar) with G the
symplectic SPD matrix assembled from (X, Y); mixed Gaussian states carry the
same form with an extra (det F)^{1/2} prefactor and spectrum below 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .blobs import Ellipsoid, QuantumBlob, is_admissible
from .exceptions import DimensionMismatchError, QuadratureError
from .matcore import (
    det_spd,
    eigh,
    inv_spd,
    invsqrt_spd,
    random_spd,
    require_spd,
    require_symmetric,
    sqrt_spd,
)
from .sympcore import freeze, pre_iwasawa, require_symplectic, symplectic_inverse
from .williamson import symplectic_spectrum

_QUAD_START_PANELS = 8
_QUAD_MAX_PANELS = 4096
_QUAD_ABS_CHANGE = 1e-8

# 15-point Kronrod nodes/weights on [-1, 1] (positive abscissae; symmetric).
_K15_NODES = np.array([
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
])
_K15_WEIGHTS = np.array([
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
])


def _check_point(z, dim: int) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64).ravel()
    if z.size != dim:
        raise DimensionMismatchError(f"point has length {z.size}, expected {dim}")
    return z


@dataclass(frozen=True)
class GaussianPureState:
    """Gaussian wavefunction parameters (X SPD, Y symmetric) plus center and hbar."""

    x: np.ndarray
    y: np.ndarray
    center: np.ndarray = None
    hbar: float = 1.0

    def __post_init__(self):
        x = require_spd(self.x, "X")
        y = require_symmetric(self.y, "Y")
        if x.shape != y.shape:
            raise DimensionMismatchError("X and Y must have equal shape")
        center = np.zeros(2 * x.shape[0]) if self.center is None else self.center
        center = np.asarray(center, dtype=np.float64).ravel()
        if center.size != 2 * x.shape[0]:
            raise DimensionMismatchError("center must have length 2n")
        if not self.hbar > 0.0:
            raise ValueError("hbar must be positive")
        object.__setattr__(self, "x", freeze(x))
        object.__setattr__(self, "y", freeze(y))
        object.__setattr__(self, "center", freeze(center))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def eval_wavefunction(self, u) -> complex:
        """psi(u) for the centered state (position-space, complex value)."""
        u = _check_point(u, self.n)
        norm = (det_spd(self.x) / (math.pi * self.hbar) ** self.n) ** 0.25
        quad = u @ (self.x + 1j * self.y) @ u
        return norm * np.exp(-quad / (2.0 * self.hbar))


@dataclass(frozen=True)
class WignerGaussian:
    """Phase-space Gaussian normalization * exp(-(z-center)^T shape (z-center)/hbar).

    The normalization is (pi hbar)^{-n} sqrt(det shape): 1 for pure states
    (shape symplectic, det 1), the mixed-state prefactor otherwise.
    """

    shape: np.ndarray
    center: np.ndarray = None
    hbar: float = 1.0

    def __post_init__(self):
        shape = require_spd(self.shape, "shape")
        if shape.shape[0] % 2:
            raise ValueError("phase-space dimension must be even")
        center = np.zeros(shape.shape[0]) if self.center is None else self.center
        center = np.asarray(center, dtype=np.float64).ravel()
        if center.size != shape.shape[0]:
            raise DimensionMismatchError("center must have length 2n")
        if not self.hbar > 0.0:
            raise ValueError("hbar must be positive")
        object.__setattr__(self, "shape", freeze(shape))
        object.__setattr__(self, "center", freeze(center))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.shape.shape[0] // 2

    @property
    def normalization(self) -> float:
        return math.sqrt(det_spd(self.shape)) / (math.pi * self.hbar) ** self.n

    @property
    def is_pure(self) -> bool:
        """Pure iff the shape is symplectic, i.e. has symplectic spectrum 1."""
        lams = symplectic_spectrum(self.shape)
        return bool(np.max(np.abs(lams - 1.0)) <= tol.WIL_TOL)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Statistical covariance Sigma = (hbar/2) F^{-1} of a Gaussian state."""

    sigma: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "sigma", freeze(require_spd(self.sigma, "Sigma")))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.sigma.shape[0] // 2


def wigner_matrix(psi: GaussianPureState) -> WignerGaussian:
    """Phase-space Gaussian of a pure state: shape
    G = [[X + Y X^{-1} Y, Y X^{-1}], [X^{-1} Y, X^{-1}]], symplectic and SPD."""
    x_inv = inv_spd(psi.x)
    yxi = psi.y @ x_inv
    g = np.block([[psi.x + yxi @ psi.y, yxi], [yxi.T, x_inv]])
    return WignerGaussian(shape=0.5 * (g + g.T), center=psi.center, hbar=psi.hbar)


def wigner_eval(w: WignerGaussian, z) -> float:
    """Value of the phase-space Gaussian at the point z."""
    d = _check_point(z, 2 * w.n) - w.center
    return w.normalization * math.exp(-float(d @ w.shape @ d) / w.hbar)


def wigner_quadrature_oracle(psi: GaussianPureState, z) -> float:
    """Defining phase-space integral, evaluated numerically (one mode only).

    Computes (1/2 pi hbar) * Int exp(-i p y / hbar) psi(x + y/2) psi*(x - y/2) dy
    by composite 15-point Kronrod panels on [-L, L], doubling the panel count
    until the value changes by less than 1e-8.  Entirely independent of the
    closed-form route through ``wigner_matrix``; agreement within 1e-6 is the
    correctness oracle for that route.
    """
    if psi.n != 1:
        raise DimensionMismatchError("the quadrature oracle is one-mode only")
    z = _check_point(z, 2)
    x_pt, p_pt = float(z[0] - psi.center[0]), float(z[1] - psi.center[1])
    h = psi.hbar
    xv = float(psi.x[0, 0])
    yv = float(psi.y[0, 0])
    norm = math.sqrt(xv / (math.pi * h))
    half_l = 8.0 * math.sqrt(h / xv)

    def integral(panels: int) -> complex:
        edges = np.linspace(-half_l, half_l, panels + 1)
        mids = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1] - edges[0])
        total = 0.0 + 0.0j
        for node, weight in zip(_K15_NODES, _K15_WEIGHTS):
            pts = [mids + half * node] if node == 0.0 else [mids + half * node, mids - half * node]
            for y in pts:
                up = x_pt + 0.5 * y
                um = x_pt - 0.5 * y
                vals = norm * np.exp(
                    (-0.5 * (xv + 1j * yv) * up * up
                     - 0.5 * (xv - 1j * yv) * um * um
                     - 1j * p_pt * y) / h
                )
                total += weight * half * np.sum(vals)
        return total

    panels = _QUAD_START_PANELS
    prev = integral(panels)
    while panels <= _QUAD_MAX_PANELS:
        panels *= 2
        cur = integral(panels)
        if abs(cur - prev) < _QUAD_ABS_CHANGE:
            return float(cur.real) / (2.0 * math.pi * h)
        prev = cur
    raise QuadratureError(f"no convergence up to {_QUAD_MAX_PANELS} panels")


def blob_from_gaussian(psi: GaussianPureState) -> QuantumBlob:
    """The quantum blob of a pure state: S = [[X^{-1/2}, 0], [-Y X^{-1/2}, X^{1/2}]],
    so that (S S^T)^{-1} equals the state's phase-space shape matrix."""
    x_invsqrt = invsqrt_spd(psi.x)
    x_sqrt = sqrt_spd(psi.x)
    zero = np.zeros((psi.n, psi.n))
    s = np.block([[x_invsqrt, zero], [-(psi.y @ x_invsqrt), x_sqrt]])
    return QuantumBlob(center=psi.center, s=s, hbar=psi.hbar)


def gaussian_from_blob(q: QuantumBlob) -> GaussianPureState:
    """Inverse of ``blob_from_gaussian`` up to blob equivalence.

    From the triangular pre-Iwasawa factor of the blob map: X = A0^{-2} and
    Y = -A0^{-1} C0^T (symmetric by the factorization constraint)."""
    fac = pre_iwasawa(q.s)
    a0_inv = inv_spd(fac.a0)
    x = a0_inv @ a0_inv
    y = -(a0_inv @ fac.c0.T)
    return GaussianPureState(
        x=0.5 * (x + x.T), y=0.5 * (y + y.T), center=q.center, hbar=q.hbar
    )


def covariance(w: WignerGaussian) -> CovarianceMatrix:
    """Sigma = (hbar/2) * shape^{-1}."""
    return CovarianceMatrix(sigma=0.5 * w.hbar * inv_spd(w.shape), hbar=w.hbar)


def is_squeezed(cov: CovarianceMatrix) -> bool:
    """Whether the smallest covariance eigenvalue drops below hbar/2.

    Rotation-invariant but not symplectically invariant; the coherent state
    (boundary case) is not squeezed."""
    w, _ = eigh(cov.sigma, "Sigma")
    return bool(w[0] < 0.5 * cov.hbar * (1.0 - tol.ADM_TOL))


def is_squeezed_ellipsoid(e: Ellipsoid) -> bool:
    """Squeezed-state test on an ellipsoid: admissible, and the largest plain
    eigenvalue of F exceeds 1."""
    if not is_admissible(e):
        return False
    w, _ = eigh(e.f, "F")
    return bool(w[-1] > 1.0 + tol.ADM_TOL)


def transform_wigner(w: WignerGaussian, s) -> WignerGaussian:
    """Push the Gaussian through a symplectic map: shape -> S^{-T} shape S^{-1},
    center -> S center.  Preserves the symplectic spectrum, so pure stays pure."""
    s = require_symplectic(s, "map")
    if s.shape[0] != 2 * w.n:
        raise DimensionMismatchError("map and state dimensions differ")
    s_inv = symplectic_inverse(s)
    shape = s_inv.T @ w.shape @ s_inv
    return WignerGaussian(
        shape=0.5 * (shape + shape.T), center=s @ w.center, hbar=w.hbar
    )


def translate_wigner(w: WignerGaussian, z0) -> WignerGaussian:
    """Translate the Gaussian by z0 (shape unchanged)."""
    z0 = _check_point(z0, 2 * w.n)
    return WignerGaussian(shape=w.shape, center=w.center + z0, hbar=w.hbar)


def smooth(w: WignerGaussian, q: QuantumBlob) -> WignerGaussian:
    """Convolve the Gaussian with a blob's coherent phase-space Gaussian.

    With H the input shape and G = (S S^T)^{-1} the blob's, the convolution is
    again a Gaussian with shape F = (H^{-1} + G^{-1})^{-1} = H (H + G)^{-1} G
    and the mixed-state normalization; every symplectic eigenvalue of F lies
    strictly below 1, so the output is always an admissible (mixed) state.
    Centers add.
    """
    if q.n != w.n:
        raise DimensionMismatchError("state and blob dimensions differ")
    g = inv_spd(q.s @ q.s.T)
    f = w.shape @ inv_spd(w.shape + g) @ g
    return WignerGaussian(
        shape=0.5 * (f + f.T), center=w.center + q.center, hbar=w.hbar
    )


def debruijn_admissible(alpha: float, beta: float, n: int = 1, hbar: float = 1.0) -> bool:
    """Admissibility of the separable smoothing ellipsoid
    |x|^2/alpha^2 + |p|^2/beta^2 <= hbar: true exactly when alpha*beta >= 1
    (the smoothed transform stays pointwise nonnegative in that regime)."""
    if not (alpha > 0.0 and beta > 0.0):
        raise ValueError("alpha and beta must be positive")
    diag = np.array([1.0 / alpha**2] * n + [1.0 / beta**2] * n)
    return is_admissible(Ellipsoid(center=np.zeros(2 * n), f=np.diag(diag), hbar=hbar))


def random_gaussian_state(n: int, seed, hbar: float = 1.0) -> GaussianPureState:
    """Seeded random centered pure state with bounded parameter conditioning."""
    rng = np.random.default_rng(seed)
    x = random_spd(n, rng, eig_range=(0.25, 4.0))
    g = rng.standard_normal((n, n))
    y = 0.5 * (g + g.T)
    return GaussianPureState(x=x, y=y, center=np.zeros(2 * n), hbar=hbar)

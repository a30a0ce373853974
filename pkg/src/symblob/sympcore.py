"""The symplectic-group layer: J, membership tests, generators, factorizations.

Phase-space coordinates are ordered ``(x_1..x_n, p_1..p_n)`` throughout, with
the block form ``J = [[0, I], [-I, 0]]``, and the symplectic form
``omega(z, z') = z'^T J z``.
"""

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .exceptions import (
    DegenerateDrawError,
    IndexOutOfRangeError,
    NotSymplecticError,
    OddDimensionError,
)
from .matcore import as_square, inv_spd, invsqrt_spd, max_abs, sqrt_spd

_RANDOM_PLANE_RETRIES = 100


def freeze(a) -> np.ndarray:
    """Float64 copy marked read-only (domain objects treat arrays as values)."""
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def standard_j(n: int) -> np.ndarray:
    """The 2n x 2n block matrix [[0, I], [-I, 0]]; satisfies J @ J = -I."""
    if n < 1:
        raise ValueError("n must be >= 1")
    j = np.zeros((2 * n, 2 * n))
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


def omega(z, z_prime) -> float:
    """Symplectic form omega(z, z') = z'^T J z on 2n-vectors."""
    z = np.asarray(z, dtype=np.float64)
    zp = np.asarray(z_prime, dtype=np.float64)
    if z.shape != zp.shape or z.ndim != 1 or z.size % 2:
        raise OddDimensionError("omega needs two equal-length even-dimension vectors")
    n = z.size // 2
    # J z = (z_p, -z_x)
    return float(zp[:n] @ z[n:] - zp[n:] @ z[:n])


def symplectic_residual(s) -> float:
    """Max-norm residual of both membership identities S^T J S = J = S J S^T."""
    m = as_square(s, "matrix")
    if m.shape[0] % 2:
        raise OddDimensionError(f"symplectic matrices have even dimension, got {m.shape[0]}")
    j = standard_j(m.shape[0] // 2)
    return max(max_abs(m.T @ j @ m - j), max_abs(m @ j @ m.T - j))


def is_symplectic(s, residual_tol: float = tol.SYMP_TOL) -> bool:
    """Whether S^T J S = J (and the equivalent S J S^T = J) within tolerance."""
    return symplectic_residual(s) <= residual_tol


def require_symplectic(s, name: str = "matrix") -> np.ndarray:
    """Validate symplectic membership plus the det = 1 consequence."""
    m = as_square(s, name)
    if m.shape[0] % 2:
        raise OddDimensionError(f"{name} has odd dimension {m.shape[0]}")
    res = symplectic_residual(m)
    if res > tol.SYMP_TOL:
        raise NotSymplecticError(
            f"{name} is not symplectic: residual {res:.3e} exceeds {tol.SYMP_TOL:.1e}"
        )
    det = float(np.linalg.det(m))
    if abs(det - 1.0) > 1e4 * tol.SYMP_TOL:
        raise NotSymplecticError(f"{name} has determinant {det!r}, expected 1")
    return m


def symplectic_inverse(s) -> np.ndarray:
    """Inverse of a symplectic matrix via S^{-1} = -J S^T J (no solve needed)."""
    m = as_square(s, "matrix")
    j = standard_j(m.shape[0] // 2)
    return -j @ m.T @ j


@dataclass(frozen=True)
class UnitaryBlock:
    """Real blocks (A, B) of a unitary A + iB, embeddable into Sp(n) ∩ O(2n)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = as_square(self.a, "A block")
        b = as_square(self.b, "B block")
        if a.shape != b.shape:
            raise ValueError("A and B blocks must have equal shape")
        scale = 1.0 + max(max_abs(a), max_abs(b))
        if (
            max_abs(a @ a.T + b @ b.T - np.eye(a.shape[0])) > tol.SYMP_TOL * scale
            or max_abs(a @ b.T - b @ a.T) > tol.SYMP_TOL * scale
        ):
            raise NotSymplecticError("blocks do not satisfy the unitarity identities")
        object.__setattr__(self, "a", freeze(a))
        object.__setattr__(self, "b", freeze(b))

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def embed(self) -> np.ndarray:
        """The 2n x 2n orthogonal-and-symplectic matrix [[A, -B], [B, A]]."""
        return np.block([[self.a, -self.b], [self.b, self.a]])


@dataclass(frozen=True)
class PreIwasawaFactors:
    """Factors of S = [[A0, 0], [C0, A0^{-1}]] @ [[X0, -Y0], [Y0, X0]]."""

    a0: np.ndarray
    c0: np.ndarray
    x0: np.ndarray
    y0: np.ndarray

    def __post_init__(self):
        for field in ("a0", "c0", "x0", "y0"):
            object.__setattr__(self, field, freeze(getattr(self, field)))

    @property
    def n(self) -> int:
        return self.a0.shape[0]

    def constraint_defect(self) -> float:
        """Max-norm asymmetry of A0 @ C0 (zero for exact factors)."""
        m = self.a0 @ self.c0
        return max_abs(m - m.T)

    def rotation(self) -> UnitaryBlock:
        return UnitaryBlock(self.x0, self.y0)

    def triangular(self) -> np.ndarray:
        zero = np.zeros((self.n, self.n))
        return np.block([[self.a0, zero], [self.c0, inv_spd(self.a0)]])

    def reassemble(self) -> np.ndarray:
        return self.triangular() @ self.rotation().embed()


def pre_iwasawa(s) -> PreIwasawaFactors:
    """Unique factorization of S in Sp(n) into a lower-triangular symplectic
    factor times a symplectic rotation.

    With S in block form [[A, B], [C, D]] the factors are::

        A0 = (A A^T + B B^T)^{1/2}
        C0 = (C A^T + D B^T) (A A^T + B B^T)^{-1/2}
        X0 + i Y0 = (A A^T + B B^T)^{-1/2} (A - i B)

    A0 is SPD, C0 A0 is symmetric, and X0 + i Y0 is unitary.
    """
    m = require_symplectic(s, "matrix")
    n = m.shape[0] // 2
    a, b = m[:n, :n], m[:n, n:]
    c, d = m[n:, :n], m[n:, n:]
    p = a @ a.T + b @ b.T
    p_invsqrt = invsqrt_spd(p, "A A^T + B B^T")
    return PreIwasawaFactors(
        a0=sqrt_spd(p, "A A^T + B B^T"),
        c0=(c @ a.T + d @ b.T) @ p_invsqrt,
        x0=p_invsqrt @ a,
        y0=-(p_invsqrt @ b),
    )


@dataclass(frozen=True)
class SymplecticPlane:
    """A 2-plane spanned by an orthonormal pair on which omega is non-degenerate."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.float64).ravel()
        v = np.asarray(self.v, dtype=np.float64).ravel()
        if u.shape != v.shape or u.size % 2:
            raise OddDimensionError("plane basis vectors must share an even dimension")
        if (
            abs(u @ u - 1.0) > tol.SYMP_TOL
            or abs(v @ v - 1.0) > tol.SYMP_TOL
            or abs(u @ v) > tol.SYMP_TOL
        ):
            raise ValueError("plane basis must be orthonormal")
        if abs(omega(u, v)) < tol.PLANE_TOL:
            raise DegenerateDrawError(
                "the symplectic form is degenerate on the requested plane"
            )
        object.__setattr__(self, "u", freeze(u))
        object.__setattr__(self, "v", freeze(v))

    @property
    def n(self) -> int:
        return self.u.size // 2

    @property
    def density(self) -> float:
        """|omega(u, v)| for the orthonormal basis; 1 on conjugate-pair planes."""
        return abs(omega(self.u, self.v))

    def basis_matrix(self) -> np.ndarray:
        """2n x 2 matrix with columns (u, v)."""
        return np.column_stack([self.u, self.v])


def plane_from_basis(u, v) -> SymplecticPlane:
    """Build a plane from any two spanning vectors (orthonormalized on entry)."""
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    nu = float(np.sqrt(u @ u))
    if nu == 0.0:
        raise ValueError("first basis vector is zero")
    u = u / nu
    v = v - (u @ v) * u
    nv = float(np.sqrt(v @ v))
    if nv < 1e-12:
        raise ValueError("basis vectors do not span a plane")
    return SymplecticPlane(u, v / nv)


def coordinate_plane(n: int, j: int) -> SymplecticPlane:
    """The conjugate-coordinate plane spanned by e_{x_j}, e_{p_j} (1-based j)."""
    if not 1 <= j <= n:
        raise IndexOutOfRangeError(f"plane index {j} outside 1..{n}")
    u = np.zeros(2 * n)
    v = np.zeros(2 * n)
    u[j - 1] = 1.0
    v[n + j - 1] = 1.0
    return SymplecticPlane(u, v)


def random_plane(n: int, seed) -> SymplecticPlane:
    """Seeded random symplectic plane (orthonormal pair with |omega(u,v)| above
    the degeneracy floor; degenerate draws are retried)."""
    rng = np.random.default_rng(seed)
    for _ in range(_RANDOM_PLANE_RETRIES):
        g = rng.standard_normal((2 * n, 2))
        try:
            plane = plane_from_basis(g[:, 0], g[:, 1])
        except (ValueError, DegenerateDrawError):
            continue
        return plane
    raise DegenerateDrawError(
        f"no non-degenerate plane after {_RANDOM_PLANE_RETRIES} draws"
    )


def random_unitary_block(n: int, rng) -> UnitaryBlock:
    """Haar-ish random unitary A + iB via modified Gram-Schmidt (deterministic
    in the supplied generator)."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    for k in range(n):
        col = z[:, k]
        for _ in range(2):  # second pass keeps orthogonality near machine level
            for i in range(k):
                col = col - (np.vdot(z[:, i], col)) * z[:, i]
        z[:, k] = col / np.sqrt(np.vdot(col, col).real)
    return UnitaryBlock(z.real.copy(), z.imag.copy())


def random_symplectic(n: int, seed) -> np.ndarray:
    """Seeded random symplectic matrix with bounded conditioning.

    Built as shear @ rotation @ rescaling: a symmetric shear [[I, 0], [C, I]],
    a symplectic rotation from a random unitary, and the diagonal rescaling
    (x_j, p_j) -> (l_j x_j, p_j / l_j) with l_j in [1/2, 2].
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    lam = np.exp(rng.uniform(-np.log(2.0), np.log(2.0), size=n))
    delta = np.diag(np.concatenate([lam, 1.0 / lam]))
    rot = random_unitary_block(n, rng).embed()
    g = rng.uniform(-0.5, 0.5, size=(n, n))
    cshear = 0.5 * (g + g.T)
    shear = np.eye(2 * n)
    shear[n:, :n] = cshear
    return shear @ rot @ delta

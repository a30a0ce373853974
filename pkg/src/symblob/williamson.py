"""Williamson normal form, symplectic spectra, and the ellipsoid-embedding engine.

For M symmetric positive definite of size 2n there is a symplectic S with
``M = S^T D S`` and ``D = diag(L, L)``, where the diagonal of L is the
symplectic spectrum of M: the positive numbers l_j such that the eigenvalues
of J M are +/- i l_j.  The spectrum is kept in decreasing order everywhere.
"""

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .exceptions import (
    DegenerateSpectrumError,
    DimensionMismatchError,
    NotPositiveDefiniteError,
    OddDimensionError,
)
from .matcore import eigh, invsqrt_spd, max_abs, require_spd
from .sympcore import freeze, require_symplectic, standard_j, symplectic_inverse

_CLUSTER_REL_WIDTH = 1e-8  # eigenvalues this close (relative) share an invariant space


def _require_even_spd(m, name: str) -> np.ndarray:
    m = require_spd(m, name)
    if m.shape[0] % 2:
        raise OddDimensionError(f"{name} has odd dimension {m.shape[0]}")
    return m


def symplectic_spectrum(m) -> np.ndarray:
    """Symplectic spectrum of an SPD matrix, sorted decreasing.

    Computed from the antisymmetric conjugate K = M^{1/2} J M^{1/2}: the
    eigenvalues of -K^2 are the l_j^2, each doubled, and only symmetric
    eigenproblems are involved.
    """
    m = _require_even_spd(m, "matrix")
    n = m.shape[0] // 2
    from .matcore import sqrt_spd  # local import avoids a cycle at module load

    r = sqrt_spd(m)
    k = r @ standard_j(n) @ r
    w, _ = eigh(k @ k.T)
    w = np.clip(w, 0.0, None)
    lams = np.sqrt(0.5 * (w[0::2] + w[1::2]))
    return lams[::-1].copy()


@dataclass(frozen=True)
class WilliamsonForm:
    """Symplectic diagonalization M = S^T D S with D = diag(spectrum, spectrum)."""

    s: np.ndarray
    spectrum: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "s", freeze(self.s))
        object.__setattr__(self, "spectrum", freeze(np.ravel(self.spectrum)))

    @property
    def n(self) -> int:
        return self.spectrum.size

    def d(self) -> np.ndarray:
        """The diagonal factor diag(spectrum, spectrum)."""
        return np.diag(np.concatenate([self.spectrum, self.spectrum]))

    def reconstruct(self) -> np.ndarray:
        return self.s.T @ self.d() @ self.s

    def residual(self, m) -> float:
        """Max-norm reconstruction residual against the source matrix."""
        return max_abs(self.reconstruct() - np.asarray(m, dtype=np.float64))


def _clusters(values: np.ndarray, width: float):
    """Split a sorted 1-D array into runs of near-equal values."""
    groups = [[0]]
    for i in range(1, values.size):
        if values[i] - values[groups[-1][0]] <= width:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _orthogonalize(vec: np.ndarray, basis: list) -> np.ndarray:
    """Two-pass Gram-Schmidt of ``vec`` against an orthonormal ``basis``."""
    for _ in range(2):
        for b in basis:
            vec = vec - (b @ vec) * b
    return vec


def _sign_fix(u: np.ndarray) -> np.ndarray:
    """Flip so the first non-negligible coordinate is positive (determinism)."""
    scale = max_abs(u)
    for x in u:
        if abs(x) > 1e-9 * scale:
            return -u if x < 0.0 else u
    return u


def _random_orthogonal(dim: int, rng) -> np.ndarray:
    g = rng.standard_normal((dim, dim))
    _, q = eigh(g + g.T)
    return q


def williamson_diagonalize(m, mixing_seed=None) -> WilliamsonForm:
    """Compute a Williamson normal form M = S^T D S of an SPD matrix.

    The construction uses only symmetric eigenproblems: with K the
    antisymmetric matrix M^{-1/2} J M^{-1/2}, the eigenvalues of -K^2 are
    1/l_j^2 (doubled); inside each invariant eigenspace an orthonormal pair
    (u_j, v_j) with v_j = l_j K^T u_j spans a K-invariant plane, and
    O = [u_1..u_n v_1..v_n] is orthogonal.  Then R = M^{-1/2} O D^{1/2}
    satisfies R^T M R = D and R^T J R = J, and S = R^{-1}.

    Any U(n) rotation of the output is an equally valid form; pass
    ``mixing_seed`` to randomize the choice among them (testing aid).
    """
    m = _require_even_spd(m, "matrix")
    n = m.shape[0] // 2
    j = standard_j(n)
    m_invsqrt = invsqrt_spd(m)
    k = m_invsqrt @ j @ m_invsqrt
    w, vec = eigh(k @ k.T)  # eigenvalues 1/l^2, ascending => l decreasing
    w = np.clip(w, 0.0, None)
    rng = None if mixing_seed is None else np.random.default_rng(mixing_seed)

    us, vs, lams = [], [], []
    for cluster in _clusters(w, _CLUSTER_REL_WIDTH * (1.0 + w[-1])):
        if len(cluster) % 2:
            raise DegenerateSpectrumError(
                "invariant eigenspace of odd dimension; eigenvalues of -K^2 must pair"
            )
        cols = vec[:, cluster]
        if rng is not None:
            cols = cols @ _random_orthogonal(len(cluster), rng)
        lam = 1.0 / np.sqrt(float(np.mean(w[cluster])))
        chosen: list = []
        for _ in range(len(cluster) // 2):
            u = None
            for c in range(cols.shape[1]):
                cand = _orthogonalize(cols[:, c].copy(), chosen)
                nrm = float(np.sqrt(cand @ cand))
                if nrm > 0.1:
                    u = _sign_fix(cand / nrm)
                    break
            if u is None:
                raise DegenerateSpectrumError("could not extend the invariant-plane basis")
            v = -lam * (k @ u)
            v = _orthogonalize(v, chosen + [u])
            nrm = float(np.sqrt(v @ v))
            if nrm < 0.5:
                raise DegenerateSpectrumError("invariant-plane partner collapsed")
            v = v / nrm
            chosen.extend([u, v])
            us.append(u)
            vs.append(v)
            lams.append(lam)

    o = np.column_stack(us + vs)
    lams = np.asarray(lams)
    d_half = np.sqrt(np.concatenate([lams, lams]))
    r = (m_invsqrt @ o) * d_half
    return WilliamsonForm(s=symplectic_inverse(r), spectrum=lams)


def spectrum_is_symplectically_invariant(m, s, compare_tol: float = tol.SPEC_TOL) -> bool:
    """Whether Spec(S^T M S) matches Spec(M) within tolerance (sanity predicate)."""
    m = _require_even_spd(m, "matrix")
    s = require_symplectic(s, "symplectic factor")
    if s.shape != m.shape:
        raise DimensionMismatchError(f"shapes {m.shape} and {s.shape} differ")
    a = symplectic_spectrum(m)
    b = symplectic_spectrum(s.T @ m @ s)
    return bool(np.max(np.abs(a - b)) <= compare_tol * (1.0 + float(a[0])))


def spectra_dominates(a, b, slack: float = 0.0) -> bool:
    """Componentwise a_j >= b_j - slack for two decreasing spectra."""
    a = np.ravel(np.asarray(a, dtype=np.float64))
    b = np.ravel(np.asarray(b, dtype=np.float64))
    if a.shape != b.shape:
        raise DimensionMismatchError(f"spectra lengths {a.size} and {b.size} differ")
    return bool(np.all(a >= b - slack))


def embed_ellipsoid(m, m_prime, slack: float = 1e-10):
    """Symplectic S mapping {z^T M z <= 1} into {z^T M' z <= 1}, or None.

    Feasible exactly when Spec(M) dominates Spec(M') componentwise (closed
    ellipsoids, so boundary-equal spectra count); the map is assembled from
    the two Williamson forms as S = S2^{-1} S1.
    """
    m = _require_even_spd(m, "source matrix")
    m_prime = _require_even_spd(m_prime, "target matrix")
    if m.shape != m_prime.shape:
        raise DimensionMismatchError(f"shapes {m.shape} and {m_prime.shape} differ")
    w1 = williamson_diagonalize(m)
    w2 = williamson_diagonalize(m_prime)
    if not spectra_dominates(w1.spectrum, w2.spectrum, slack=slack):
        return None
    return symplectic_inverse(w2.s) @ w1.s


def diagonalize_symmetric_symplectic(s):
    """Diagonalize an SPD symplectic matrix by a symplectic rotation.

    Returns ``(U, lams)`` with U a UnitaryBlock and ``lams`` ascending in
    (0, 1] such that ``S = U.embed().T @ diag(lams, 1/lams) @ U.embed()``.
    Eigenvalues of such a matrix come in (l, 1/l) pairs; the partner of an
    eigenvector u for l is -J u for 1/l.
    """
    from .sympcore import UnitaryBlock  # deferred to avoid import cycle

    mat = require_symplectic(s, "matrix")
    mat = require_spd(mat, "matrix")
    dim = mat.shape[0]
    n = dim // 2
    j = standard_j(n)
    w, vec = eigh(mat)
    width = _CLUSTER_REL_WIDTH * (1.0 + float(w[-1]))

    us, lams = [], []
    for cluster in _clusters(w, width):
        lam = float(np.mean(w[cluster]))
        if lam > 1.0 + width:
            continue  # reciprocal partners of an earlier cluster
        cols = vec[:, cluster]
        if abs(lam - 1.0) <= width:
            # J-invariant eigenspace: pick u's so that {u_k} + {-J u_k} is a basis
            if len(cluster) % 2:
                raise DegenerateSpectrumError("unit eigenspace of odd dimension")
            chosen: list = []
            for _ in range(len(cluster) // 2):
                u = None
                for c in range(cols.shape[1]):
                    cand = _orthogonalize(cols[:, c].copy(), chosen)
                    nrm = float(np.sqrt(cand @ cand))
                    if nrm > 0.1:
                        u = _sign_fix(cand / nrm)
                        break
                if u is None:
                    raise DegenerateSpectrumError("could not pair the unit eigenspace")
                chosen.extend([u, -(j @ u)])
                us.append(u)
                lams.append(1.0)
        else:
            for c in range(cols.shape[1]):
                u = _sign_fix(cols[:, c].copy())
                us.append(u)
                lams.append(lam)

    if len(us) != n:
        raise DegenerateSpectrumError(
            f"paired {len(us)} eigendirections, expected {n}; spectrum not reciprocal"
        )
    order = np.argsort(lams, kind="stable")
    us = [us[i] for i in order]
    lams = np.asarray(lams)[order]
    a_v = np.column_stack([u[:n] for u in us])
    b_v = np.column_stack([u[n:] for u in us])
    return UnitaryBlock(a_v.T, -b_v.T), lams

"""Blobs, sections, projections, capacity, admissibility, companions."""

import math

import numpy as np
import pytest

from symblob import blobs as bl
from symblob import matcore as mc
from symblob import sympcore as sc
from symblob import williamson as wil
from symblob.exceptions import (
    CapacityMismatchError,
    EmptyIndexSetError,
    IndexOutOfRangeError,
)

PI = math.pi


def shear_blob():
    """Mode-entangling blob: S = [[I, 0], [C, I]] with C the exchange matrix.

    Its conjugate-plane (x1, p1) section is {2 x1^2 + p1^2 <= hbar}, of area
    pi*hbar/sqrt(2): the canonical witness that section areas of blobs are NOT
    constant across symplectic planes once modes couple.
    """
    s = np.eye(4)
    s[2:, :2] = np.array([[0.0, 1.0], [1.0, 0.0]])
    return bl.QuantumBlob(center=np.zeros(4), s=s)


def diagonalizing_frame_planes(e: bl.Ellipsoid):
    """The n orthogonal conjugate planes of the blob's own rotation frame,
    where sections are exactly pi*hbar."""
    ub, _ = wil.diagonalize_symmetric_symplectic(e.f)
    emb = ub.embed()
    n = e.n
    return [sc.SymplecticPlane(emb[j], emb[n + j]) for j in range(n)]


def test_blob_to_ellipsoid_examples():
    assert np.array_equal(
        bl.blob_to_ellipsoid(bl.QuantumBlob(np.zeros(2), np.eye(2))).f, np.eye(2)
    )
    e = bl.blob_to_ellipsoid(bl.QuantumBlob(np.zeros(2), np.diag([2.0, 0.5])))
    np.testing.assert_allclose(e.f, np.diag([0.25, 4.0]))
    assert bl.is_quantum_blob(e)


def test_is_quantum_blob_cases():
    assert bl.is_quantum_blob(bl.ball(3, hbar=0.7))
    # any n=1 ellipse of area pi*hbar (det F = 1) is a blob
    theta = 0.4
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    f = rot @ np.diag([4.0, 0.25]) @ rot.T
    assert bl.is_quantum_blob(bl.Ellipsoid(np.zeros(2), f, hbar=2.0))
    assert not bl.is_quantum_blob(bl.Ellipsoid(np.zeros(4), np.diag([1.0, 1.0, 1.0, 4.0])))


def test_section_area_examples():
    for seed in range(5):
        assert bl.section_area(bl.ball(2), sc.random_plane(2, seed)) == pytest.approx(PI)
    e = bl.blob_to_ellipsoid(
        bl.QuantumBlob(np.zeros(4), np.diag([2.0, 3.0, 0.5, 1.0 / 3.0]))
    )
    assert bl.section_area(e, sc.coordinate_plane(2, 1)) == pytest.approx(PI)
    e14 = bl.Ellipsoid(np.zeros(2), np.diag([1.0, 4.0]))
    assert bl.section_area(e14, sc.coordinate_plane(1, 1)) == pytest.approx(PI / 2)


def test_all_n1_sections_are_half_h():
    for seed in range(100):
        e = bl.blob_to_ellipsoid(bl.random_blob(1, seed, hbar=1.3))
        plane = sc.random_plane(1, seed)
        assert bl.section_area(e, plane) == pytest.approx(PI * 1.3, rel=1e-12)


def test_sections_in_own_frame_are_half_h():
    # the true kernel of section invariance: every blob owns n orthogonal
    # conjugate planes with section exactly pi*hbar
    for seed in range(50):
        n = 1 + seed % 4
        e = bl.blob_to_ellipsoid(bl.random_blob(n, seed))
        for plane in diagonalizing_frame_planes(e):
            assert bl.section_area(e, plane) == pytest.approx(PI, rel=1e-9)


def test_shear_blob_conjugate_section_regression():
    # generic blobs do NOT have pi*hbar sections on every conjugate plane
    e = bl.blob_to_ellipsoid(shear_blob())
    assert bl.is_quantum_blob(e)
    area = bl.section_area(e, sc.coordinate_plane(2, 1))
    assert area == pytest.approx(PI / math.sqrt(2), rel=1e-12)


def test_section_bound_weighted_by_plane_density():
    # correct inequality: area <= pi*hbar / |omega(u, v)| for every blob/plane
    for seed in range(300):
        n = 1 + seed % 4
        e = bl.blob_to_ellipsoid(bl.random_blob(n, seed))
        plane = sc.random_plane(n, seed + 1)
        assert bl.section_area(e, plane) <= PI / plane.density + 1e-9


def test_projection_examples_and_bounds():
    for seed in range(5):
        assert bl.projection_area(bl.ball(2), sc.random_plane(2, seed)) == pytest.approx(PI)
    # n=1: projection equals section for centered ellipses
    e = bl.Ellipsoid(np.zeros(2), np.diag([1.0, 4.0]))
    assert bl.projection_area(e, sc.coordinate_plane(1, 1)) == pytest.approx(
        bl.section_area(e, sc.coordinate_plane(1, 1))
    )


def test_projection_at_least_section():
    for seed in range(200):
        n = 1 + seed % 4
        e = bl.blob_to_ellipsoid(bl.random_blob(n, seed))
        plane = sc.random_plane(n, seed + 7)
        assert bl.projection_area(e, plane) >= bl.section_area(e, plane) - 1e-9


def test_projection_bound_weighted_by_plane_density():
    # correct non-squeezing: shadow area >= pi*hbar*|omega(u, v)|; on
    # conjugate-type (unit-density) planes this is the pi*hbar bound
    for seed in range(300):
        n = 1 + seed % 4
        e = bl.blob_to_ellipsoid(bl.random_blob(n, seed))
        plane = sc.random_plane(n, seed + 11)
        assert bl.projection_area(e, plane) >= PI * plane.density - 1e-9


def test_projection_on_conjugate_planes_at_least_half_h():
    for seed in range(200):
        n = 1 + seed % 4
        e = bl.blob_to_ellipsoid(bl.random_blob(n, seed))
        for j in range(1, n + 1):
            assert bl.projection_area(e, sc.coordinate_plane(n, j)) >= PI - 1e-9


def test_low_density_projection_regression():
    # a squeezed blob shadow on a near-Lagrangian symplectic plane drops
    # below pi*hbar: the all-planes reading of non-squeezing fails
    e = bl.blob_to_ellipsoid(bl.QuantumBlob(np.zeros(4), np.diag([0.5, 1.0, 2.0, 1.0])))
    plane = sc.SymplecticPlane(
        np.array([1.0, 0.0, 0.0, 0.0]),
        np.array([0.0, math.sqrt(0.99), 0.1, 0.0]),
    )
    area = bl.projection_area(e, plane)
    assert area < PI  # ~0.507*pi
    assert area >= PI * plane.density - 1e-9


def test_non_blob_has_deviating_section():
    # converse witness search over ambient and frame conjugate planes
    for seed in range(50):
        n = 2 + seed % 3
        spectrum = np.linspace(1.0, 0.4, n)  # admissible, not a blob
        s = sc.random_symplectic(n, seed)
        f = s.T @ np.diag(np.concatenate([spectrum, spectrum])) @ s
        e = bl.Ellipsoid(np.zeros(2 * n), f)
        assert bl.is_admissible(e) and not bl.is_quantum_blob(e)
        planes = [sc.coordinate_plane(n, j) for j in range(1, n + 1)]
        deviation = max(abs(bl.section_area(e, p) - PI) for p in planes)
        assert deviation > 1e-3


def test_gromov_width():
    assert bl.gromov_width(bl.ball(2, hbar=0.5)) == pytest.approx(0.5 * PI)
    # n=1: width equals the ellipse area pi*R1*R2
    r1, r2 = 0.7, 1.9
    f = np.diag([1.0 / r1**2, 1.0 / r2**2])
    assert bl.gromov_width(bl.Ellipsoid(np.zeros(2), f)) == pytest.approx(PI * r1 * r2)
    s = sc.random_symplectic(2, 4)
    f2 = s.T @ np.diag([2.0, 0.5, 2.0, 0.5]) @ s
    assert bl.gromov_width(bl.Ellipsoid(np.zeros(4), f2)) == pytest.approx(PI / 2)


def test_capacity_axioms():
    for seed in range(100):
        n = 1 + seed % 3
        f = mc.random_spd(2 * n, seed)
        e = bl.Ellipsoid(np.zeros(2 * n), f)
        width = bl.gromov_width(e)
        # symplectic invariance
        s = sc.random_symplectic(n, seed + 2)
        conj = bl.Ellipsoid(np.zeros(2 * n), s.T @ f @ s)
        assert bl.gromov_width(conj) == pytest.approx(width, rel=1e-9)
        # scaling: k*E has shape F/k^2 and capacity k^2 c
        k = 1.0 + (seed % 5)
        scaled = bl.Ellipsoid(np.zeros(2 * n), f / k**2)
        assert bl.gromov_width(scaled) == pytest.approx(k**2 * width, rel=1e-12)
        # monotone under shrinking (F grows => set shrinks => capacity drops)
        rng = np.random.default_rng(seed)
        p = rng.standard_normal((2 * n, 2 * n))
        smaller = bl.Ellipsoid(np.zeros(2 * n), f + p.T @ p)
        assert bl.gromov_width(smaller) <= width + 1e-9


def test_gromov_width_translation_invariant():
    f = mc.random_spd(4, 123)
    a = bl.Ellipsoid(np.zeros(4), f)
    b = bl.Ellipsoid(np.array([3.0, -1.0, 0.5, 2.0]), f)
    assert bl.gromov_width(a) == bl.gromov_width(b)


def test_is_admissible_cases():
    assert bl.is_admissible(bl.blob_to_ellipsoid(bl.random_blob(2, 5)))
    # n=1 boundary covariance ellipsoid: sigma_x = sigma_p = sqrt(hbar/2)
    hbar = 0.8
    sigma = 0.5 * hbar * np.eye(2)
    f = 0.5 * hbar * mc.inv_spd(sigma)
    assert bl.is_admissible(bl.Ellipsoid(np.zeros(2), f, hbar=hbar))
    assert not bl.is_admissible(bl.Ellipsoid(np.zeros(4), 2.0 * np.eye(4)))


def test_admissibility_conditions_cases():
    ball_cond = bl.admissibility_conditions(bl.ball(2))
    assert (ball_cond.a, ball_cond.b, ball_cond.c, ball_cond.d) == (True,) * 4
    s = sc.random_symplectic(2, 8)
    ok = bl.admissibility_conditions(
        bl.Ellipsoid(np.zeros(4), s.T @ np.diag([0.5, 0.2, 0.5, 0.2]) @ s)
    )
    assert ok.admissible and ok.a and ok.b and ok.c and ok.d
    bad = bl.admissibility_conditions(
        bl.Ellipsoid(np.zeros(4), s.T @ np.diag([1.5, 0.5, 1.5, 0.5]) @ s)
    )
    assert (bad.a, bad.b, bad.c, bad.d) == (False,) * 4


def test_conditions_agree_with_is_admissible_straddling():
    for seed in range(200):
        n = 1 + seed % 3
        rng = np.random.default_rng(seed + 10_000)
        spectrum = np.sort(np.exp(rng.uniform(-0.7, 0.7, size=n)))[::-1]
        s = sc.random_symplectic(n, seed)
        f = s.T @ np.diag(np.concatenate([spectrum, spectrum])) @ s
        e = bl.Ellipsoid(np.zeros(2 * n), f)
        cond = bl.admissibility_conditions(e)
        assert len({cond.a, cond.b, cond.c, cond.d}) == 1
        assert cond.admissible == bl.is_admissible(e)


def test_n1_uncertainty_closed_form():
    for seed in range(100):
        rng = np.random.default_rng(seed)
        sx, sp = np.exp(rng.uniform(-0.5, 0.5, size=2))
        rho = rng.uniform(-0.95, 0.95)
        hbar = 1.0
        sigma = np.array([[sx**2, rho * sx * sp], [rho * sx * sp, sp**2]])
        f = 0.5 * hbar * mc.inv_spd(sigma)
        e = bl.Ellipsoid(np.zeros(2), f, hbar=hbar)
        closed_form = sx * sp * math.sqrt(1.0 - rho**2)
        # |eig(J Sigma)| equals the closed form
        np.testing.assert_allclose(
            wil.symplectic_spectrum(sigma), [closed_form], atol=1e-10
        )
        assert bl.is_admissible(e) == (closed_form >= 0.5 * hbar * (1 - 1e-9))


def test_companion_of_blob_is_itself():
    e = bl.blob_to_ellipsoid(bl.random_blob(2, 21, hbar=2.0))
    q = bl.companion_blob(e)
    assert np.max(np.abs(bl.blob_to_ellipsoid(q).f - e.f)) <= 1e-10


def test_companion_contained_with_unit_sections():
    for seed in range(20):
        s = sc.random_symplectic(2, seed + 40)
        d = np.diag([1.0, 0.25, 1.0, 0.25])  # radii (sqrt(h), 2 sqrt(h))
        e = bl.Ellipsoid(np.zeros(4), s.T @ d @ s)
        q = bl.companion_blob(e)
        qe = bl.blob_to_ellipsoid(q)
        assert bl.is_quantum_blob(qe)
        for z in qe.boundary_points(300, seed):
            assert e.contains(z, slack=1e-9)
        for plane in diagonalizing_frame_planes(qe):
            assert bl.section_area(qe, plane) == pytest.approx(PI, rel=1e-9)


def test_companion_translation_equivariance():
    center = np.array([1.0, -2.0, 0.3, 0.7])
    f = bl.blob_to_ellipsoid(bl.random_blob(2, 33)).f
    q = bl.companion_blob(bl.Ellipsoid(center, f))
    np.testing.assert_array_equal(q.center, center)


def test_companion_well_defined_across_normalizers():
    # two different Williamson normalizers give the same companion ellipsoid
    for seed in range(20):
        s = sc.random_symplectic(2, seed)
        f = s.T @ np.diag([1.0, 0.5, 1.0, 0.5]) @ s
        w1 = wil.williamson_diagonalize(f)
        w2 = wil.williamson_diagonalize(f, mixing_seed=seed + 1)
        g1 = w1.s.T @ w1.s
        g2 = w2.s.T @ w2.s
        assert np.max(np.abs(g1 - g2)) <= 1e-8


def test_companion_capacity_mismatch():
    with pytest.raises(CapacityMismatchError):
        bl.companion_blob(bl.Ellipsoid(np.zeros(2), 0.5 * np.eye(2)))


def test_subspace_full_index_set_is_identity():
    q = bl.random_blob(3, 9)
    e = bl.blob_to_ellipsoid(q)
    section = bl.coordinate_subspace_section(q, [1, 2, 3])
    np.testing.assert_allclose(section.f, e.f)


def test_subspace_of_product_blob():
    s1 = sc.random_symplectic(1, 1)
    s2 = sc.random_symplectic(1, 2)
    s = np.zeros((4, 4))
    s[np.ix_([0, 2], [0, 2])] = s1
    s[np.ix_([1, 3], [1, 3])] = s2
    q = bl.QuantumBlob(np.zeros(4), s)
    section = bl.coordinate_subspace_section(q, [1])
    assert bl.is_quantum_blob(section)
    np.testing.assert_allclose(section.f, bl.blob_to_ellipsoid(
        bl.QuantumBlob(np.zeros(2), s1)).f, atol=1e-12)


def test_subspace_is_intersection_not_shadow():
    # a point inside the shadow (Schur complement) but outside the section
    # must fail full-space membership when embedded with the other mode at 0
    q = shear_blob()
    e = bl.blob_to_ellipsoid(q)
    section = bl.coordinate_subspace_section(q, [1])
    f = e.f
    keep, drop = [0, 2], [1, 3]
    schur = f[np.ix_(keep, keep)] - f[np.ix_(keep, drop)] @ mc.inv_spd(
        f[np.ix_(drop, drop)]
    ) @ f[np.ix_(drop, keep)]
    np.testing.assert_allclose(section.f, f[np.ix_(keep, keep)])
    rng = np.random.default_rng(0)
    hits = 0
    for _ in range(500):
        w = rng.uniform(-1.5, 1.5, size=2)
        in_section = w @ section.f @ w <= 1.0
        in_shadow = w @ schur @ w <= 1.0
        z = np.array([w[0], 0.0, w[1], 0.0])
        assert e.contains(z) == in_section
        if in_shadow and not in_section:
            hits += 1
    assert hits > 0  # shadow strictly larger for the coupled blob


def test_subspace_dense_membership_oracle_n2():
    for seed in range(30):
        q = bl.random_blob(2, seed + 200)
        e = bl.blob_to_ellipsoid(q)
        section = bl.coordinate_subspace_section(q, [2])
        rng = np.random.default_rng(seed)
        for _ in range(50):
            w = rng.uniform(-2.0, 2.0, size=2)
            z = np.array([0.0, w[0], 0.0, w[1]])
            assert e.contains(z) == (w @ section.f @ w <= e.hbar)


def test_subspace_errors():
    q = bl.random_blob(2, 3)
    with pytest.raises(EmptyIndexSetError):
        bl.coordinate_subspace_section(q, [])
    with pytest.raises(IndexOutOfRangeError):
        bl.coordinate_subspace_section(q, [3])


def test_blob_volume():
    assert bl.blob_volume(bl.QuantumBlob(np.zeros(2), np.eye(2))) == pytest.approx(PI)
    assert abs(bl.blob_volume(bl.random_blob(2, 1)) - PI**2 / 2) <= 1e-12
    v1 = bl.blob_volume(bl.random_blob(3, 5, hbar=0.7))
    v2 = bl.blob_volume(bl.random_blob(3, 99, hbar=0.7))
    assert v1 == v2


def test_quant_manifold_dim():
    assert bl.quant_manifold_dim(1) == 4
    assert bl.quant_manifold_dim(2) == 10
    assert bl.quant_manifold_dim(3) == 18

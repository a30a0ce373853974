"""Symplectic phase-space toolkit.

Williamson normal forms and symplectic spectra, quantum blobs with their
capacity/admissibility tests, the blob-Gaussian correspondence, and Gaussian
smoothing, over a deterministic dense-kernel core (compiled with a
pure-Python fallback).  Coordinates are ordered (x_1..x_n, p_1..p_n).
"""

from .blobs import (
    AdmissibilityConditions,
    Ellipsoid,
    QuantumBlob,
    admissibility_conditions,
    ball,
    blob_to_ellipsoid,
    blob_volume,
    companion_blob,
    coordinate_subspace_section,
    gromov_width,
    is_admissible,
    is_quantum_blob,
    projection_area,
    quant_manifold_dim,
    random_blob,
    section_area,
    williamson_radii,
)
from .gaussianstates import (
    CovarianceMatrix,
    GaussianPureState,
    WignerGaussian,
    blob_from_gaussian,
    covariance,
    debruijn_admissible,
    gaussian_from_blob,
    is_squeezed,
    is_squeezed_ellipsoid,
    random_gaussian_state,
    smooth,
    transform_wigner,
    translate_wigner,
    wigner_eval,
    wigner_matrix,
    wigner_quadrature_oracle,
)
from .kernels import backend, jacobi_eigh
from .matcore import (
    eigh,
    eigvals_general,
    eigvalsh,
    inv_spd,
    invsqrt_spd,
    random_spd,
    sqrt_spd,
)
from .sympcore import (
    PreIwasawaFactors,
    SymplecticPlane,
    UnitaryBlock,
    coordinate_plane,
    is_symplectic,
    omega,
    plane_from_basis,
    pre_iwasawa,
    random_plane,
    random_symplectic,
    standard_j,
    symplectic_inverse,
    symplectic_residual,
)
from .williamson import (
    WilliamsonForm,
    diagonalize_symmetric_symplectic,
    embed_ellipsoid,
    spectra_dominates,
    spectrum_is_symplectically_invariant,
    symplectic_spectrum,
    williamson_diagonalize,
)

__version__ = "0.1.0"

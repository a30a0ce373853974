"""Numerical tolerances used across the package.

All residual comparisons are max-norm based.  Kernel-level tolerances (1e-10
and tighter) leave one order of headroom below the composed operations
(Williamson forms, blob recognition) which run at 1e-8.
"""

SYM_TOL = 1e-10     # relative symmetry defect accepted on symmetric inputs
PD_TOL = 1e-12      # relative eigenvalue floor for positive definiteness
EIG_TOL = 1e-10     # eigendecomposition residual budget
SYMP_TOL = 1e-9     # absolute max-norm residual for symplectic membership
PLANE_TOL = 1e-6    # minimum |omega(u, v)| for a non-degenerate plane
WIL_TOL = 1e-8      # Williamson reconstruction residual budget
SPEC_TOL = 1e-8     # symplectic-spectrum comparison tolerance
BLOB_TOL = 1e-8     # window around 1 for quantum-blob recognition
ADM_TOL = 1e-9      # slack on admissibility comparisons
CAP_TOL = 1e-8      # relative slack when matching a capacity
HERM_TOL = 1e-10    # relative PSD floor for Hermitian uncertainty tests

DIM_CAP = 20        # largest matrix dimension accepted by the dense kernels
JACOBI_MAX_SWEEPS = 100


def as_dict() -> dict:
    """Tolerance set in report-friendly form (sorted keys when serialized)."""
    return {
        "adm_tol": ADM_TOL,
        "blob_tol": BLOB_TOL,
        "cap_tol": CAP_TOL,
        "dim_cap": DIM_CAP,
        "eig_tol": EIG_TOL,
        "herm_tol": HERM_TOL,
        "pd_tol": PD_TOL,
        "plane_tol": PLANE_TOL,
        "spec_tol": SPEC_TOL,
        "sym_tol": SYM_TOL,
        "symp_tol": SYMP_TOL,
        "wil_tol": WIL_TOL,
    }

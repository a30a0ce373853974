"""Command-line front end.

Matrices come in as JSON files (``{"rows": R, "cols": C, "data": [...]}``,
row-major, coordinates ordered x_1..x_n, p_1..p_n); reports go to stdout
(JSON with ``--json``), diagnostics to stderr.  Exit codes: 0 success,
2 parse error, 3 input-invariant violation, 4 domain-precondition failure.
"""

import argparse
import math
import sys

import numpy as np

from . import blobs, gaussianstates as gstates, io, sympcore, williamson
from .exceptions import (
    CapacityMismatchError,
    DegenerateDrawError,
    DegeneratePlaneError,
    DegenerateSpectrumError,
    DimensionCapError,
    DimensionMismatchError,
    EmptyIndexSetError,
    IndexOutOfRangeError,
    InternalInconsistencyError,
    MatrixFileError,
    NoConvergenceError,
    NonSymmetricError,
    NotPositiveDefiniteError,
    NotSymplecticError,
    OddDimensionError,
    PreconditionError,
    QuadratureError,
)
from .matcore import max_abs, random_spd
from .tolerances import DIM_CAP

_PARSE_ERRORS = (MatrixFileError,)
_INVARIANT_ERRORS = (
    ValueError,
    NonSymmetricError,
    NotPositiveDefiniteError,
    NotSymplecticError,
    OddDimensionError,
    DimensionMismatchError,
    NoConvergenceError,
    DegenerateSpectrumError,
    InternalInconsistencyError,
)
_PRECONDITION_ERRORS = (
    PreconditionError,
    CapacityMismatchError,
    IndexOutOfRangeError,
    EmptyIndexSetError,
    DimensionCapError,
    DegenerateDrawError,
    DegeneratePlaneError,
    QuadratureError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symblob",
        description="Symplectic phase-space toolkit: spectra, normal forms, "
        "quantum blobs, Gaussian states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, positionals=None):
        p.add_argument("--matrix", help="primary input matrix file (JSON)")
        p.add_argument("--matrix2", help="secondary input matrix file (JSON)")
        p.add_argument("--hbar", type=float, default=1.0, help="value of hbar (default 1.0)")
        p.add_argument("--plane", help="conjugate-plane index j, or a 2-column basis file")
        p.add_argument("--samples", type=int, default=64, help="sample count for plot data")
        p.add_argument("--seed", type=int, default=0, help="seed for random generators")
        p.add_argument("--out", help="output file for matrices / CSV data")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
        if positionals:
            p.add_argument("args", nargs="*", help=positionals)

    common(sub.add_parser("spectrum", help="symplectic spectrum, radii, capacity"))
    common(sub.add_parser("williamson", help="symplectic diagonalization M = S^T D S"))

    p_blob = sub.add_parser("blob", help="quantum-blob operations on ellipsoids")
    p_blob.add_argument(
        "subcommand",
        choices=["check", "section", "project", "volume", "companion", "subspace"],
    )
    common(p_blob, positionals="mode indices for `subspace`")

    p_gauss = sub.add_parser("gaussian", help="Gaussian-state operations")
    p_gauss.add_argument(
        "subcommand",
        choices=["from-blob", "to-blob", "wigner", "covariance", "squeezed", "smooth", "debruijn"],
    )
    common(p_gauss, positionals="evaluation point (`wigner`) or alpha beta [n] (`debruijn`)")

    common(sub.add_parser("plot-section", help="CSV boundary trace of a plane section"))

    p_rand = sub.add_parser("random", help="seeded random objects, written to a file")
    p_rand.add_argument("kind", choices=["spd", "symplectic", "blob", "gaussian"])
    p_rand.add_argument("n", type=int, help="degrees of freedom")
    common(p_rand)

    return parser


def _require(value, message: str):
    if value is None:
        raise MatrixFileError(message)
    return value


def _read_tracked(path: str, inputs: dict) -> np.ndarray:
    m = io.read_matrix(path)
    inputs[path] = io.file_digest(path)
    return m


def _load_ellipsoid(args, inputs) -> blobs.Ellipsoid:
    path = _require(args.matrix, "--matrix FILE is required (ellipsoid shape matrix)")
    f = _read_tracked(path, inputs)
    return blobs.Ellipsoid(center=np.zeros(f.shape[0]), f=f, hbar=args.hbar)


def _load_blob(args, inputs) -> blobs.QuantumBlob:
    path = _require(args.matrix, "--matrix FILE is required (blob map S)")
    s = _read_tracked(path, inputs)
    return blobs.QuantumBlob(center=np.zeros(s.shape[0]), s=s, hbar=args.hbar)


def _load_state(args, inputs) -> gstates.GaussianPureState:
    path = _require(args.matrix, "--matrix FILE is required (X matrix or state file)")
    if args.matrix2:
        x = _read_tracked(path, inputs)
        y = _read_tracked(args.matrix2, inputs)
    else:
        x, y, _ = io.read_state(path)
        inputs[path] = io.file_digest(path)
    return gstates.GaussianPureState(x=x, y=y, hbar=args.hbar)


def _load_plane(args, n: int, inputs) -> sympcore.SymplecticPlane:
    value = _require(args.plane, "--plane J|FILE is required for this subcommand")
    try:
        return sympcore.coordinate_plane(n, int(value))
    except (TypeError, ValueError):
        pass
    basis = _read_tracked(value, inputs)
    if basis.ndim != 2 or basis.shape != (2 * n, 2):
        raise ValueError(f"plane basis file must be a {2 * n} x 2 matrix")
    return sympcore.plane_from_basis(basis[:, 0], basis[:, 1])


def _float_args(raw, count: int, what: str):
    if len(raw) != count:
        raise PreconditionError(f"{what} needs exactly {count} numeric arguments")
    try:
        return [float(v) for v in raw]
    except ValueError as exc:
        raise MatrixFileError(f"{what}: arguments must be numbers") from exc


def _cmd_spectrum(args) -> io.Report:
    inputs: dict = {}
    e = _load_ellipsoid(args, inputs)
    spectrum = williamson.symplectic_spectrum(e.f)
    results = {
        "spectrum": spectrum,
        "radii": blobs.williamson_radii(e),
        "capacity": blobs.gromov_width(e),
        "admissible": blobs.is_admissible(e),
        "n": e.n,
    }
    return io.Report(command=args.argv, hbar=args.hbar, results=results, inputs=inputs)


def _cmd_williamson(args) -> io.Report:
    inputs: dict = {}
    path = _require(args.matrix, "--matrix FILE is required")
    m = _read_tracked(path, inputs)
    form = williamson.williamson_diagonalize(m)
    results = {
        "spectrum": form.spectrum,
        "s": form.s,
        "reconstruction_residual": form.residual(m) / max(1.0, max_abs(m)),
        "symplectic_residual": sympcore.symplectic_residual(form.s),
    }
    if args.out:
        io.write_matrix(args.out, form.s)
        results["out"] = args.out
    return io.Report(command=args.argv, hbar=args.hbar, results=results, inputs=inputs)


def _cmd_blob(args) -> io.Report:
    inputs: dict = {}
    sub = args.subcommand
    if sub == "check":
        e = _load_ellipsoid(args, inputs)
        results = {
            "is_quantum_blob": blobs.is_quantum_blob(e),
            "spectrum": williamson.symplectic_spectrum(e.f),
        }
    elif sub in ("section", "project"):
        e = _load_ellipsoid(args, inputs)
        plane = _load_plane(args, e.n, inputs)
        area = blobs.section_area(e, plane) if sub == "section" else blobs.projection_area(e, plane)
        results = {"area": area, "plane_density": plane.density}
    elif sub == "volume":
        q = _load_blob(args, inputs)
        results = {"volume": blobs.blob_volume(q), "n": q.n}
    elif sub == "companion":
        e = _load_ellipsoid(args, inputs)
        q = blobs.companion_blob(e)
        results = {
            "s": q.s,
            "ellipsoid": blobs.blob_to_ellipsoid(q).f,
            "capacity": blobs.gromov_width(e),
        }
        if args.out:
            io.write_matrix(args.out, q.s)
            results["out"] = args.out
    else:  # subspace
        e = _load_ellipsoid(args, inputs)
        try:
            indices = [int(v) for v in args.args]
        except ValueError as exc:
            raise MatrixFileError("mode indices must be integers") from exc
        section = blobs.coordinate_subspace_section(e, indices)
        results = {
            "f_sub": section.f,
            "is_quantum_blob": blobs.is_quantum_blob(section),
            "modes": sorted(set(indices)),
        }
    return io.Report(command=args.argv, hbar=args.hbar, results=results, inputs=inputs)


def _cmd_gaussian(args) -> io.Report:
    inputs: dict = {}
    sub = args.subcommand
    if sub == "from-blob":
        q = _load_blob(args, inputs)
        psi = gstates.gaussian_from_blob(q)
        results = {"x": psi.x, "y": psi.y}
        if args.out:
            io.write_state(args.out, psi.x, psi.y, psi.hbar)
            results["out"] = args.out
    elif sub == "to-blob":
        psi = _load_state(args, inputs)
        q = gstates.blob_from_gaussian(psi)
        results = {"s": q.s, "f": blobs.blob_to_ellipsoid(q).f}
        if args.out:
            io.write_matrix(args.out, q.s)
            results["out"] = args.out
    elif sub == "wigner":
        psi = _load_state(args, inputs)
        point = _float_args(args.args, 2 * psi.n, "the evaluation point")
        value = gstates.wigner_eval(gstates.wigner_matrix(psi), point)
        results = {"value": value, "point": point}
    elif sub == "covariance":
        psi = _load_state(args, inputs)
        cov = gstates.covariance(gstates.wigner_matrix(psi))
        results = {
            "sigma": cov.sigma,
            "jsigma_moduli": williamson.symplectic_spectrum(cov.sigma),
            "squeezed": gstates.is_squeezed(cov),
        }
    elif sub == "squeezed":
        psi = _load_state(args, inputs)
        cov = gstates.covariance(gstates.wigner_matrix(psi))
        from .matcore import eigvalsh

        results = {
            "squeezed": gstates.is_squeezed(cov),
            "sigma_min_eig": float(eigvalsh(cov.sigma)[0]),
        }
    elif sub == "smooth":
        path = _require(args.matrix, "--matrix FILE is required (Gaussian shape H)")
        h = _read_tracked(path, inputs)
        path2 = _require(args.matrix2, "--matrix2 FILE is required (blob map S)")
        s = _read_tracked(path2, inputs)
        w = gstates.WignerGaussian(shape=h, hbar=args.hbar)
        q = blobs.QuantumBlob(center=np.zeros(s.shape[0]), s=s, hbar=args.hbar)
        out = gstates.smooth(w, q)
        results = {
            "f": out.shape,
            "spectrum": williamson.symplectic_spectrum(out.shape),
            "admissible": blobs.is_admissible(
                blobs.Ellipsoid(center=out.center, f=out.shape, hbar=args.hbar)
            ),
        }
        if args.out:
            io.write_matrix(args.out, out.shape)
            results["out"] = args.out
    else:  # debruijn
        raw = args.args
        if len(raw) not in (2, 3):
            raise PreconditionError("debruijn needs: alpha beta [n]")
        alpha, beta = _float_args(raw[:2], 2, "debruijn")
        n = int(raw[2]) if len(raw) == 3 else 1
        results = {
            "alpha": alpha,
            "beta": beta,
            "product": alpha * beta,
            "admissible": gstates.debruijn_admissible(alpha, beta, n=n, hbar=args.hbar),
        }
    return io.Report(command=args.argv, hbar=args.hbar, results=results, inputs=inputs)


def _cmd_plot_section(args) -> io.Report:
    inputs: dict = {}
    if args.samples < 3:
        raise PreconditionError("a boundary polygon needs at least 3 samples")
    e = _load_ellipsoid(args, inputs)
    plane = _load_plane(args, e.n, inputs)
    out = _require(args.out, "--out FILE is required for plot data")
    b = plane.basis_matrix()
    section = b.T @ e.f @ b
    area = blobs.section_area(e, plane)
    from .matcore import invsqrt_spd

    half_axes = math.sqrt(e.hbar) * invsqrt_spd(section)
    lines = ["theta,u,v"]
    for k in range(args.samples):
        theta = 2.0 * math.pi * k / args.samples
        w = half_axes @ np.array([math.cos(theta), math.sin(theta)])
        lines.append(f"{float(theta)!r},{float(w[0])!r},{float(w[1])!r}")
    lines.append(f"# area={float(area)!r}")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    results = {"area": area, "samples": args.samples, "out": out}
    return io.Report(command=args.argv, hbar=args.hbar, results=results, inputs=inputs)


def _cmd_random(args) -> io.Report:
    if args.n < 1 or 2 * args.n > DIM_CAP:
        raise DimensionCapError(f"n must be in 1..{DIM_CAP // 2}")
    out = _require(args.out, "--out FILE is required")
    kind = args.kind
    if kind == "spd":
        io.write_matrix(out, random_spd(2 * args.n, args.seed))
    elif kind == "symplectic":
        io.write_matrix(out, sympcore.random_symplectic(args.n, args.seed))
    elif kind == "blob":
        io.write_matrix(out, blobs.random_blob(args.n, args.seed, hbar=args.hbar).s)
    else:  # gaussian
        psi = gstates.random_gaussian_state(args.n, args.seed, hbar=args.hbar)
        io.write_state(out, psi.x, psi.y, psi.hbar)
    results = {"kind": kind, "n": args.n, "seed": args.seed, "out": out}
    return io.Report(command=args.argv, hbar=args.hbar, results=results, inputs={})


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "williamson": _cmd_williamson,
    "blob": _cmd_blob,
    "gaussian": _cmd_gaussian,
    "plot-section": _cmd_plot_section,
    "random": _cmd_random,
}


def _looks_numeric(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args, extras = parser.parse_known_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if extras:
        # trailing numerals after flags belong to the subcommand positionals
        if not hasattr(args, "args") or any(
            e.startswith("-") and not _looks_numeric(e) for e in extras
        ):
            print(f"symblob: unrecognized arguments: {' '.join(extras)}", file=sys.stderr)
            return 2
        args.args = list(getattr(args, "args") or []) + extras
    args.argv = ["symblob"] + argv
    try:
        report = _DISPATCH[args.command](args)
    except _PARSE_ERRORS as exc:
        print(f"symblob: parse error: {exc}", file=sys.stderr)
        return 2
    except _PRECONDITION_ERRORS as exc:
        print(f"symblob: precondition failed: {exc}", file=sys.stderr)
        return 4
    except _INVARIANT_ERRORS as exc:
        print(f"symblob: invalid input: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())

import json
import os
import subprocess
import sys

import numpy as np
import pytest

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


def matrix_obj(m) -> dict:
    m = np.atleast_2d(np.asarray(m, dtype=np.float64))
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [float(x) for x in m.ravel()],
    }


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def write_matrix_file(path, m) -> None:
    write_json(path, matrix_obj(m))


def run_cli(args, cwd, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "symblob", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
        env=env,
    )


def grid_convolution_value(shape_a, norm_a, shape_b, norm_b, z, hbar=1.0, half=6.0, step=0.05):
    """Direct Riemann-sum convolution of two centered 2D Gaussians at point z.

    Independent numerical oracle for the closed-form smoothing identity
    (n = 1 only): integrates norm_a*exp(-(z-w)^T A (z-w)/hbar) *
    norm_b*exp(-w^T B w/hbar) over the grid [-half, half]^2.
    """
    ax = np.arange(-half, half + step / 2, step)
    gx, gp = np.meshgrid(ax, ax, indexing="ij")
    w = np.stack([gx.ravel(), gp.ravel()], axis=1)
    d = z - w
    qa = np.einsum("ij,jk,ik->i", d, shape_a, d)
    qb = np.einsum("ij,jk,ik->i", w, shape_b, w)
    vals = norm_a * np.exp(-qa / hbar) * norm_b * np.exp(-qb / hbar)
    return float(np.sum(vals) * step * step)


@pytest.fixture
def cli_workspace(tmp_path):
    """Temp directory pre-populated with the canonical CLI input files."""
    make_cli_inputs(tmp_path)
    return tmp_path


def make_cli_inputs(dirpath) -> None:
    from symblob import random_blob, random_gaussian_state, random_spd, random_symplectic

    d = str(dirpath)
    write_matrix_file(os.path.join(d, "eye2.json"), np.eye(2))
    write_matrix_file(os.path.join(d, "diag14.json"), np.diag([1.0, 4.0]))
    write_matrix_file(os.path.join(d, "ball4.json"), np.eye(4))
    # ellipsoid of the product blob S = diag(2, 3, 1/2, 1/3)
    write_matrix_file(
        os.path.join(d, "product_blob_f.json"), np.diag([0.25, 1.0 / 9.0, 4.0, 9.0])
    )
    write_matrix_file(os.path.join(d, "spd6.json"), random_spd(6, 5))
    write_matrix_file(os.path.join(d, "blob2_s.json"), random_blob(2, 3).s)
    write_matrix_file(os.path.join(d, "symp2.json"), random_symplectic(2, 7))
    psi = random_gaussian_state(1, 2)
    write_json(
        os.path.join(d, "state1.json"),
        {"n": 1, "hbar": 1.0, "X": matrix_obj(psi.x), "Y": matrix_obj(psi.y)},
    )
    with open(os.path.join(d, "bad.json"), "w", encoding="utf-8") as fh:
        fh.write("this is not json\n")
    write_matrix_file(os.path.join(d, "notspd.json"), np.array([[1.0, 2.0], [2.0, 1.0]]))
    write_matrix_file(os.path.join(d, "odd3.json"), np.eye(3))
    write_matrix_file(os.path.join(d, "half2.json"), 0.5 * np.eye(2))

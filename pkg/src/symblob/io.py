"""Matrix/state file formats and deterministic reports.

Matrices travel as JSON ``{"rows": R, "cols": C, "data": [...]}`` with
row-major data in coordinate order (x_1..x_n, p_1..p_n).  Gaussian states
combine two such blocks: ``{"n": n, "hbar": h, "X": {...}, "Y": {...}}``.
Reports serialize with sorted keys so byte-identical golden files work.
"""

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from . import tolerances
from .exceptions import MatrixFileError

VERSION = "0.1.0"


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MatrixFileError(f"cannot parse {path}: {exc}") from exc


def matrix_from_obj(obj, name: str = "matrix") -> np.ndarray:
    """Decode and validate one matrix object."""
    if not isinstance(obj, dict):
        raise MatrixFileError(f"{name}: expected an object with rows/cols/data")
    missing = {"rows", "cols", "data"} - set(obj)
    if missing:
        raise MatrixFileError(f"{name}: missing keys {sorted(missing)}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise MatrixFileError(f"{name}: rows/cols must be positive integers")
    if not isinstance(data, list) or not all(isinstance(x, (int, float)) for x in data):
        raise MatrixFileError(f"{name}: data must be a list of numbers")
    if len(data) != rows * cols:
        raise ValueError(
            f"{name}: data length {len(data)} violates rows*cols = {rows * cols}"
        )
    m = np.asarray(data, dtype=np.float64).reshape(rows, cols)
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name}: data contains non-finite entries")
    return m


def read_matrix(path: str) -> np.ndarray:
    return matrix_from_obj(_load_json(path), name=path)


def matrix_to_obj(m) -> dict:
    m = np.atleast_2d(np.asarray(m, dtype=np.float64))
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [float(x) for x in m.ravel()],
    }


def write_matrix(path: str, m) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_obj(m), fh, sort_keys=True, indent=2)
        fh.write("\n")


def read_state(path: str):
    """Read a Gaussian state file; returns (x, y, hbar)."""
    obj = _load_json(path)
    if not isinstance(obj, dict) or "X" not in obj or "Y" not in obj:
        raise MatrixFileError(f"{path}: expected a state object with X and Y blocks")
    x = matrix_from_obj(obj["X"], name=f"{path}:X")
    y = matrix_from_obj(obj["Y"], name=f"{path}:Y")
    hbar = obj.get("hbar", 1.0)
    if not isinstance(hbar, (int, float)) or not hbar > 0:
        raise MatrixFileError(f"{path}: hbar must be a positive number")
    return x, y, float(hbar)


def write_state(path: str, x, y, hbar: float) -> None:
    obj = {
        "n": int(np.asarray(x).shape[0]),
        "hbar": float(hbar),
        "X": matrix_to_obj(x),
        "Y": matrix_to_obj(y),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def to_jsonable(value):
    """Recursively convert results (arrays, numpy scalars) to JSON-safe values."""
    if isinstance(value, np.ndarray):
        if value.ndim == 2:
            return matrix_to_obj(value)
        return [float(x) for x in value.ravel()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


@dataclass
class Report:
    """Deterministic command report: echoes the command, input digests,
    the active hbar, results, the tolerance set, and the version."""

    command: list
    hbar: float
    results: dict
    inputs: dict = field(default_factory=dict)
    version: str = VERSION

    def to_dict(self) -> dict:
        return {
            "command": [str(c) for c in self.command],
            "hbar": float(self.hbar),
            "inputs": {str(k): str(v) for k, v in sorted(self.inputs.items())},
            "results": to_jsonable(self.results),
            "tolerances": tolerances.as_dict(),
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        for key, value in sorted(to_jsonable(self.results).items()):
            if isinstance(value, dict) and {"rows", "cols", "data"} <= set(value):
                lines.append(f"{key}:")
                m = np.asarray(value["data"]).reshape(value["rows"], value["cols"])
                for row in m:
                    lines.append("  " + "  ".join(repr(float(x)) for x in row))
            else:
                lines.append(f"{key}: {value}")
        return "\n".join(lines) + "\n"

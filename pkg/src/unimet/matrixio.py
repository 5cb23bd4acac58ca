"""JSON serialization of complex matrices.

One matrix per file, real and imaginary parts stored as separate
row-major nested lists:

    {"n": 2, "re": [[0.0, 1.0], [1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .resources import TAU_HERMITIAN, HermitianMatrix, validate_hermitian
from .unitary import TAU_UNITARY, UnitaryMatrix, validate_unitary

__all__ = [
    "matrix_to_dict",
    "matrix_from_dict",
    "write_matrix",
    "load_matrix",
    "load_unitary",
    "load_hermitian",
]


def matrix_to_dict(matrix) -> dict:
    """Encode a square complex matrix as a JSON-ready dict."""
    if isinstance(matrix, (UnitaryMatrix, HermitianMatrix)):
        matrix = matrix.matrix
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return {
        "n": int(m.shape[0]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_dict(obj) -> np.ndarray:
    """Decode the dict form back into a complex ndarray."""
    if not isinstance(obj, dict):
        raise ValueError("matrix document must be a JSON object")
    missing = {"n", "re", "im"} - set(obj)
    if missing:
        raise ValueError(f"matrix document lacks fields: {sorted(missing)}")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"field 'n' must be a positive integer, got {n!r}")
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"matrix entries are not numeric: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError(
            f"matrix parts must have shape ({n}, {n}), got re{re.shape} im{im.shape}"
        )
    m = re + 1j * im
    if not np.all(np.isfinite(re)) or not np.all(np.isfinite(im)):
        raise ValueError("matrix entries must be finite")
    return m


def write_matrix(path, matrix) -> None:
    """Write one matrix to ``path`` in the JSON format."""
    doc = matrix_to_dict(matrix)
    Path(path).write_text(json.dumps(doc, sort_keys=True) + "\n", encoding="utf-8")


def load_matrix(path) -> np.ndarray:
    """Read one matrix from ``path``; raises ValueError on malformed input."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"cannot read matrix file {p}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"matrix file {p} is not valid JSON: {exc}") from exc
    try:
        return matrix_from_dict(obj)
    except ValueError as exc:
        raise ValueError(f"matrix file {p}: {exc}") from exc


def load_unitary(path, tau: float = TAU_UNITARY) -> UnitaryMatrix:
    """Read a matrix file and validate it as unitary."""
    m = load_matrix(path)
    try:
        return validate_unitary(m, tau=tau)
    except ValueError as exc:
        raise ValueError(f"matrix file {path}: {exc}") from exc


def load_hermitian(path, tau: float = TAU_HERMITIAN) -> HermitianMatrix:
    """Read a matrix file and validate it as Hermitian."""
    m = load_matrix(path)
    try:
        return validate_hermitian(m, tau=tau)
    except ValueError as exc:
        raise ValueError(f"matrix file {path}: {exc}") from exc

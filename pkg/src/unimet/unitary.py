"""Validated unitary matrices and their eigenphase spectra.

Every eigenvalue of a unitary matrix lies on the unit circle and can be
written ``exp(1j * theta)`` with the argument ``theta`` in the principal
interval ``(-pi, pi]``.  This module owns the conventions the rest of the
package relies on: how arguments at the branch cut are resolved, how
eigenphases are ordered, and how eigenvectors of (nearly) degenerate
eigenvalues are re-orthonormalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.linalg

__all__ = [
    "TAU_UNITARY",
    "UnitaryMatrix",
    "EigenphaseSpectrum",
    "WeightVector",
    "wrap_angle",
    "principal_arg",
    "validate_unitary",
    "identity",
    "eigenphase_spectrum",
    "matrix_power",
    "adjoint",
    "kron",
    "compose",
    "weight_vector",
]

#: default tolerance on ``max |U^H U - I|``
TAU_UNITARY = 1e-10

#: tolerance on ``| |det U| - 1 |``
_DET_TOL = 1e-8

#: arguments within this distance of -pi are reported as +pi
_BRANCH_SNAP = 1e-12

#: circular phase gap below which eigenvalues are treated as one eigenspace
_CLUSTER_TOL = 1e-8

#: maximum accepted eigenpair residual ``||U v - exp(1j*theta) v||_2``
_RESIDUAL_TOL = 1e-8


def wrap_angle(phi):
    """Reduce angles to the principal interval ``(-pi, pi]``.

    Values already inside the interval are returned untouched so that exact
    inputs (0, pi/2, ...) survive bit-for-bit.  Values within 1e-12 of the
    branch cut at ``-pi`` are snapped to ``+pi``, so a matrix with an
    eigenvalue at -1 always reports the phase ``+pi``.

    Parameters
    ----------
    phi : float or array_like

    Returns
    -------
    float or ndarray
        Same shape as the input, inside ``(-pi, pi]``.
    """
    w = np.asarray(phi, dtype=float)
    out_of_range = (w <= -np.pi) | (w > np.pi)
    if np.any(out_of_range):
        folded = np.mod(w + np.pi, 2.0 * np.pi) - np.pi
        w = np.where(out_of_range, folded, w)
    w = np.where(w <= -np.pi + _BRANCH_SNAP, np.pi, w)
    if np.ndim(phi) == 0:
        return float(w)
    return w


def principal_arg(z) -> float:
    """Principal argument of a nonzero complex scalar, in ``(-pi, pi]``."""
    zc = complex(z)
    if not (np.isfinite(zc.real) and np.isfinite(zc.imag)):
        raise ValueError("argument of a non-finite number is undefined")
    if zc == 0:
        raise ValueError("argument of zero is undefined")
    return float(wrap_angle(np.angle(zc)))


def _as_square_complex(entries) -> np.ndarray:
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValueError("matrix must be at least 1 x 1")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """A square complex matrix validated to be unitary.

    Instances are produced by :func:`validate_unitary` (or by the
    constructors in this package, all of which re-validate their results)
    and are immutable: the wrapped array is a read-only copy.
    """

    matrix: np.ndarray
    unitarity_defect: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def spectrum(self) -> "EigenphaseSpectrum":
        return _compute_spectrum(self.matrix)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"UnitaryMatrix(n={self.n}, unitarity_defect={self.unitarity_defect:.3e})"


def validate_unitary(entries, tau: float = TAU_UNITARY) -> UnitaryMatrix:
    """Validate a matrix as unitary and wrap it.

    Parameters
    ----------
    entries : array_like
        Square complex matrix.
    tau : float
        Maximum accepted entrywise deviation of ``U^H U`` from the identity.

    Returns
    -------
    UnitaryMatrix

    Raises
    ------
    ValueError
        If the matrix is not square, not finite, its unitarity defect
        exceeds ``tau``, or ``|det U|`` differs from 1 by more than 1e-8.
    """
    m = _as_square_complex(entries).copy()
    gram = m.conj().T @ m
    defect = float(np.max(np.abs(gram - np.eye(m.shape[0]))))
    if defect > tau:
        raise ValueError(
            f"matrix is not unitary: defect {defect:.3e} exceeds tolerance {tau:.3e}"
        )
    absdet = abs(np.linalg.det(m))
    if abs(absdet - 1.0) > _DET_TOL:
        raise ValueError(f"matrix determinant has modulus {absdet!r}, expected 1")
    m.setflags(write=False)
    return UnitaryMatrix(matrix=m, unitarity_defect=defect)


def identity(n: int) -> UnitaryMatrix:
    """The n-dimensional identity as a validated unitary."""
    return validate_unitary(np.eye(n, dtype=complex))


@dataclass(frozen=True, eq=False)
class EigenphaseSpectrum:
    """Eigenphases and eigenvectors of a unitary matrix.

    Attributes
    ----------
    phases : ndarray
        Eigenphases in solver order, each in ``(-pi, pi]``; ``phases[j]``
        belongs to the eigenvector ``vectors[:, j]``.
    vectors : ndarray
        Orthonormal eigenvector columns, solver order.
    phases_desc : ndarray
        Signed phases sorted descending.
    abs_phases_desc : ndarray
        Absolute phases sorted descending.  Ties between ``+t`` and ``-t``
        are resolved positive-phase-first (see :meth:`abs_desc_order`).
    """

    phases: np.ndarray
    vectors: np.ndarray
    phases_desc: np.ndarray
    abs_phases_desc: np.ndarray

    @property
    def n(self) -> int:
        return self.phases.shape[0]

    @property
    def pairs(self) -> list[tuple[float, np.ndarray]]:
        """Eigenpairs ``(theta_j, v_j)`` in solver order."""
        return [(float(t), self.vectors[:, j]) for j, t in enumerate(self.phases)]

    def abs_desc_order(self) -> np.ndarray:
        """Indices into solver order realizing ``abs_phases_desc``.

        Sorting is by descending ``|theta|`` with ties broken by descending
        signed phase, so for a degenerate pair ``{+t, -t}`` the positive
        phase comes first.  The order is deterministic for fixed input.
        """
        return np.lexsort((-self.phases, -np.abs(self.phases)))


def _mgs_orthonormalize(block: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt on the columns of ``block`` (returns a copy)."""
    q = block.astype(complex, copy=True)
    for i in range(q.shape[1]):
        v = q[:, i]
        for j in range(i):
            v = v - (q[:, j].conj() @ v) * q[:, j]
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:
            raise np.linalg.LinAlgError("degenerate eigenvector block lost rank")
        q[:, i] = v / nrm
    return q


def _cluster_indices(phases: np.ndarray) -> list[np.ndarray]:
    """Group indices whose phases lie within _CLUSTER_TOL on the circle."""
    n = phases.shape[0]
    order = np.argsort(phases, kind="stable")
    sorted_phases = phases[order]
    clusters: list[list[int]] = [[int(order[0])]]
    for pos in range(1, n):
        if sorted_phases[pos] - sorted_phases[pos - 1] <= _CLUSTER_TOL:
            clusters[-1].append(int(order[pos]))
        else:
            clusters.append([int(order[pos])])
    # the interval is a circle: a cluster may straddle the cut at +/- pi
    if len(clusters) > 1:
        gap = (sorted_phases[0] + 2.0 * np.pi) - sorted_phases[-1]
        if gap <= _CLUSTER_TOL:
            clusters[0] = clusters.pop() + clusters[0]
    return [np.array(c, dtype=int) for c in clusters]


def _compute_spectrum(matrix: np.ndarray) -> EigenphaseSpectrum:
    # The complex Schur form of a normal matrix is diagonal, so the Schur
    # basis is an orthonormal eigenbasis; this is better conditioned than a
    # plain eigensolve when eigenvalues nearly coincide.
    t, q = scipy.linalg.schur(matrix, output="complex")
    lam = np.diagonal(t).copy()
    lam /= np.abs(lam)  # project radially back onto the unit circle
    phases = np.atleast_1d(wrap_angle(np.angle(lam)))
    vectors = np.array(q, dtype=complex)

    for cluster in _cluster_indices(phases):
        if cluster.shape[0] > 1:
            vectors[:, cluster] = _mgs_orthonormalize(vectors[:, cluster])

    residual = matrix @ vectors - vectors * np.exp(1j * phases)[None, :]
    worst = float(np.max(np.linalg.norm(residual, axis=0)))
    if worst > _RESIDUAL_TOL:
        raise np.linalg.LinAlgError(
            f"eigenpair residual {worst:.3e} exceeds {_RESIDUAL_TOL:.1e}"
        )

    phases.setflags(write=False)
    vectors.setflags(write=False)
    phases_desc = np.sort(phases)[::-1].copy()
    phases_desc.setflags(write=False)
    order = np.lexsort((-phases, -np.abs(phases)))
    abs_desc = np.abs(phases[order])
    abs_desc.setflags(write=False)
    return EigenphaseSpectrum(
        phases=phases,
        vectors=vectors,
        phases_desc=phases_desc,
        abs_phases_desc=abs_desc,
    )


def eigenphase_spectrum(u: UnitaryMatrix) -> EigenphaseSpectrum:
    """Eigenphase spectrum of ``u`` (cached on the instance)."""
    return u.spectrum


def matrix_power(u: UnitaryMatrix, a: float) -> UnitaryMatrix:
    """Real matrix power ``U^a`` through the eigendecomposition.

    ``U^a = sum_j exp(1j * a * theta_j) v_j v_j^H`` with ``theta_j`` the
    principal eigenphases, which pins the branch for non-integer ``a``.
    The result is re-validated as unitary.
    """
    if not np.isfinite(a):
        raise ValueError("power must be finite")
    s = u.spectrum
    w = np.exp(1j * float(a) * s.phases)
    m = (s.vectors * w[None, :]) @ s.vectors.conj().T
    return validate_unitary(m)


def adjoint(u: UnitaryMatrix) -> UnitaryMatrix:
    """Conjugate transpose (equals the inverse for unitary input)."""
    return validate_unitary(u.matrix.conj().T)


def compose(*us: UnitaryMatrix) -> UnitaryMatrix:
    """Matrix product of unitaries, left to right, re-validated."""
    if not us:
        raise ValueError("compose needs at least one factor")
    m = us[0].matrix
    for v in us[1:]:
        if v.n != us[0].n:
            raise ValueError("dimension mismatch in product")
        m = m @ v.matrix
    return validate_unitary(m)


def kron(u1: UnitaryMatrix, u2: UnitaryMatrix) -> UnitaryMatrix:
    """Tensor (Kronecker) product of two unitaries."""
    return validate_unitary(np.kron(u1.matrix, u2.matrix))


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Non-increasing, non-negative weights, not all zero.

    The weights select how strongly each rank of the sorted absolute
    eigenphases contributes to a measure: ``weights[0]`` multiplies the
    largest absolute phase, and so on.
    """

    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def total(self) -> float:
        return float(np.sum(self.weights))


def weight_vector(mu, n: int | None = None) -> WeightVector:
    """Validate a weight vector.

    Parameters
    ----------
    mu : WeightVector or sequence of float
    n : int, optional
        Required length; mismatch raises ``ValueError``.
    """
    if isinstance(mu, WeightVector):
        w = mu.weights
    else:
        w = np.asarray(mu, dtype=float)
        if w.ndim != 1 or w.shape[0] == 0:
            raise ValueError("weights must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(np.diff(w) > 0):
            raise ValueError("weights must be non-increasing")
        if w[-1] < 0:
            raise ValueError("weights must be non-negative")
        if not np.any(w > 0):
            raise ValueError("weights must not be all zero")
        w = w.copy()
        w.setflags(write=False)
    if n is not None and w.shape[0] != n:
        raise ValueError(f"weight vector has length {w.shape[0]}, expected {n}")
    if isinstance(mu, WeightVector):
        return mu
    return WeightVector(weights=w)

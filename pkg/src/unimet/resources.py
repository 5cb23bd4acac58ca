"""Energy statistics of Hamiltonians and resource costs of unitaries.

Units are natural throughout: ``hbar = 1`` and evolution time ``t = 1``
unless a time argument is explicit, so phases, energies and resource
values are all plain radians.

The central objects are the weighted median of an energy distribution
(generally an interval, not a point), the mean absolute deviation from
it, and the generator of a unitary with eigenvalues confined to
``[-pi, pi)`` -- the Hamiltonian of minimal spectral spread realizing the
evolution in unit time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .haar import random_hermitian_array
from .metrics import enorm, nenorm, noncommutativity
from .unitary import UnitaryMatrix, validate_unitary, weight_vector

__all__ = [
    "TAU_HERMITIAN",
    "HermitianMatrix",
    "AmplitudeProfile",
    "MedianInterval",
    "validate_hermitian",
    "random_hermitian",
    "amplitude_profile",
    "median_energy",
    "mean_abs_dev_from_median",
    "rearrangement_max",
    "generator_from_unitary",
    "evolution_unitary",
    "resource_R",
    "generalized_spectral_norm",
    "derivative_check_enorm",
    "curvature_check_comm",
]

#: default tolerance on ``max |H - H^H|``
TAU_HERMITIAN = 1e-10

#: slack used when comparing accumulated probability mass against 1/2
_HALF_MASS_TOL = 1e-13


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """A square complex matrix validated to be Hermitian."""

    matrix: np.ndarray
    hermiticity_defect: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def _eigh(self) -> tuple[np.ndarray, np.ndarray]:
        vals, vecs = np.linalg.eigh(self.matrix)
        vals.setflags(write=False)
        vecs.setflags(write=False)
        return vals, vecs

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues ascending (the eigensolver's native order)."""
        return self._eigh[0]

    @property
    def eigenvectors(self) -> np.ndarray:
        """Orthonormal eigenvector columns matching :attr:`eigenvalues`."""
        return self._eigh[1]

    @property
    def abs_eigenvalues_desc(self) -> np.ndarray:
        return np.sort(np.abs(self.eigenvalues))[::-1]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"HermitianMatrix(n={self.n}, hermiticity_defect={self.hermiticity_defect:.3e})"


def validate_hermitian(entries, tau: float = TAU_HERMITIAN) -> HermitianMatrix:
    """Validate a matrix as Hermitian and wrap it."""
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    defect = float(np.max(np.abs(m - m.conj().T)))
    if defect > tau:
        raise ValueError(
            f"matrix is not Hermitian: defect {defect:.3e} exceeds tolerance {tau:.3e}"
        )
    m = m.copy()
    m.setflags(write=False)
    return HermitianMatrix(matrix=m, hermiticity_defect=defect)


def random_hermitian(n: int, rng) -> HermitianMatrix:
    """Gaussian random Hermitian matrix, see :func:`~unimet.haar.random_hermitian_array`."""
    return validate_hermitian(random_hermitian_array(n, rng))


@dataclass(frozen=True, eq=False)
class AmplitudeProfile:
    """Occupation probabilities sorted descending, summing to one."""

    probs: np.ndarray

    @property
    def n(self) -> int:
        return self.probs.shape[0]


def amplitude_profile(probs) -> AmplitudeProfile:
    """Validate a descending probability vector (sum 1 within 1e-12)."""
    if isinstance(probs, AmplitudeProfile):
        return probs
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.shape[0] == 0:
        raise ValueError("probabilities must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(p)):
        raise ValueError("probabilities must be finite")
    if np.any(np.diff(p) > 0):
        raise ValueError("probabilities must be non-increasing")
    if p[-1] < 0:
        raise ValueError("probabilities must be non-negative")
    if abs(float(np.sum(p)) - 1.0) > 1e-12:
        raise ValueError(f"probabilities sum to {float(np.sum(p))!r}, expected 1")
    p = p.copy()
    p.setflags(write=False)
    return AmplitudeProfile(probs=p)


@dataclass(frozen=True)
class MedianInterval:
    """Closed interval of all medians of a weighted distribution."""

    lo: float
    hi: float

    @property
    def canonical(self) -> float:
        """Interval midpoint, used as the reference median."""
        return (self.lo + self.hi) / 2.0

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


def _check_distribution(eigs, probs) -> tuple[np.ndarray, np.ndarray]:
    e = np.asarray(eigs, dtype=float)
    if isinstance(probs, AmplitudeProfile):
        p = probs.probs
    else:
        p = np.asarray(probs, dtype=float)
    if e.ndim != 1 or p.ndim != 1 or e.shape != p.shape or e.shape[0] == 0:
        raise ValueError("eigenvalues and probabilities must be 1-d of equal length")
    if not np.all(np.isfinite(e)) or not np.all(np.isfinite(p)):
        raise ValueError("inputs must be finite")
    if np.any(p < 0):
        raise ValueError("probabilities must be non-negative")
    if abs(float(np.sum(p)) - 1.0) > 1e-12:
        raise ValueError(f"probabilities sum to {float(np.sum(p))!r}, expected 1")
    return e, p


def median_energy(eigs, probs) -> MedianInterval:
    """All medians of the distribution putting mass ``probs_j`` at ``eigs_j``.

    A value ``M`` is a median when both tails carry at least half the
    mass: ``sum_{eigs_j <= M} probs_j >= 1/2`` and
    ``sum_{eigs_j >= M} probs_j >= 1/2``.  The solution set is a closed
    interval whose endpoints are attained eigenvalues; when the mass
    splits exactly in half the interval is non-degenerate.
    """
    e, p = _check_distribution(eigs, probs)
    order = np.argsort(e, kind="stable")
    e_sorted = e[order]
    p_sorted = p[order]
    from_left = np.cumsum(p_sorted)
    from_right = np.cumsum(p_sorted[::-1])[::-1]
    half = 0.5 - _HALF_MASS_TOL
    lo = e_sorted[int(np.argmax(from_left >= half))]
    hi = e_sorted[int(e.shape[0] - 1 - np.argmax((from_right >= half)[::-1]))]
    return MedianInterval(lo=float(lo), hi=float(hi))


def mean_abs_dev_from_median(eigs, probs) -> float:
    """Expected absolute deviation from the median.

    The value does not depend on which point of the median interval is
    used; this is asserted against both endpoints within 1e-12 (scaled by
    the spread of the distribution).
    """
    e, p = _check_distribution(eigs, probs)
    interval = median_energy(e, p)
    at_mid = float(np.dot(p, np.abs(e - interval.canonical)))
    at_lo = float(np.dot(p, np.abs(e - interval.lo)))
    at_hi = float(np.dot(p, np.abs(e - interval.hi)))
    scale = max(1.0, float(np.max(np.abs(e))))
    if max(abs(at_lo - at_mid), abs(at_hi - at_mid)) > 1e-12 * scale:
        raise ArithmeticError(
            "mean absolute deviation varies across the median interval"
        )
    return at_mid


def rearrangement_max(x, y) -> float:
    """Maximum of ``sum_j x_j * y_{sigma(j)}`` over permutations ``sigma``.

    For ``x`` sorted descending the maximum pairs it with ``y`` sorted
    descending; this is the classical rearrangement bound.
    """
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    if xv.ndim != 1 or yv.ndim != 1 or xv.shape != yv.shape or xv.shape[0] == 0:
        raise ValueError("inputs must be 1-d of equal length")
    if not np.all(np.isfinite(xv)) or not np.all(np.isfinite(yv)):
        raise ValueError("inputs must be finite")
    if np.any(np.diff(xv) > 0):
        raise ValueError("first argument must be sorted descending")
    return float(np.dot(xv, np.sort(yv)[::-1]))


def generator_from_unitary(u: UnitaryMatrix) -> HermitianMatrix:
    """Hermitian ``H`` with ``exp(-1j H) = U`` and spectrum in ``[-pi, pi)``.

    Built as ``H = sum_j (-theta_j) v_j v_j^H`` from the eigenphase
    spectrum; confining the eigenvalues to one period makes this the
    generator of minimal spectral spread.
    """
    s = u.spectrum
    h = (s.vectors * (-s.phases)[None, :]) @ s.vectors.conj().T
    h = (h + h.conj().T) / 2.0  # scrub round-off asymmetry
    return validate_hermitian(h)


def evolution_unitary(h: HermitianMatrix, t: float) -> UnitaryMatrix:
    """``exp(-1j * H * t)`` through the eigendecomposition of ``H``."""
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    vals, vecs = h.eigenvalues, h.eigenvectors
    m = (vecs * np.exp(-1j * vals * float(t))[None, :]) @ vecs.conj().T
    return validate_unitary(m)


def resource_R(u: UnitaryMatrix, probs) -> float:
    """Resource cost of ``u`` for a given occupation profile.

    Equals the global-phase minimized weighted eigenphase sum with the
    descending probabilities as weights: the tightest achievable product
    of spread-like energy statistics over all generators and global
    phases, in natural units.
    """
    ap = amplitude_profile(probs)
    if ap.n != u.n:
        raise ValueError("profile length must match the matrix dimension")
    return nenorm(u, weight_vector(ap.probs)).value


def generalized_spectral_norm(h: HermitianMatrix, mu) -> float:
    """Weighted sum of the descending absolute eigenvalues of ``h``.

    With weights ``(1, 0, ..., 0)`` this is the spectral norm.
    """
    wv = weight_vector(mu, n=h.n)
    return float(np.dot(wv.weights, h.abs_eigenvalues_desc))


def derivative_check_enorm(h: HermitianMatrix, mu, t_small: float) -> tuple[float, float]:
    """One-sided derivative of ``t -> enorm(exp(-1j H t))`` at zero.

    Returns ``(finite_difference, analytic)`` where the finite difference
    is ``enorm(exp(-1j H t_small), mu) / t_small`` and the analytic value
    is the weighted absolute-eigenvalue sum of ``H``.  The two agree to
    round-off whenever ``t_small`` keeps every phase strictly inside the
    principal interval, which is enforced.
    """
    wv = weight_vector(mu, n=h.n)
    top = float(np.max(np.abs(h.eigenvalues))) if h.n else 0.0
    limit = np.inf if top == 0.0 else np.pi / (2.0 * top)
    if not (0.0 < t_small < limit):
        raise ValueError(
            f"t_small must lie in (0, {limit!r}) for this Hamiltonian, got {t_small!r}"
        )
    fd = enorm(evolution_unitary(h, t_small), wv) / t_small
    analytic = generalized_spectral_norm(h, wv)
    return float(fd), float(analytic)


def curvature_check_comm(
    h1: HermitianMatrix, h2: HermitianMatrix, mu, t_small: float
) -> tuple[float, float]:
    """Small-time curvature of the non-commutativity of two evolutions.

    Returns ``(scaled, analytic)`` with
    ``scaled = 2 * noncommutativity(exp(-1j H1 t), exp(-1j H2 t)) / t**2``
    and ``analytic = 2 * generalized_spectral_norm(-1j*[H1, H2], mu)``;
    the scaled value converges to the analytic one as ``t -> 0`` at rate
    ``O(t)``.
    """
    if h1.n != h2.n:
        raise ValueError("dimension mismatch between the two Hamiltonians")
    wv = weight_vector(mu, n=h1.n)
    top = max(
        float(np.max(np.abs(h1.eigenvalues))),
        float(np.max(np.abs(h2.eigenvalues))),
    )
    if not (0.0 < t_small) or (top > 0.0 and t_small * top > np.pi / 2.0):
        raise ValueError(
            f"t_small must lie in (0, {np.pi / 2.0 / top if top else np.inf!r}], got {t_small!r}"
        )
    u1 = evolution_unitary(h1, t_small)
    u2 = evolution_unitary(h2, t_small)
    scaled = 2.0 * noncommutativity(u1, u2, wv) / (t_small * t_small)
    comm = -1j * (h1.matrix @ h2.matrix - h2.matrix @ h1.matrix)
    comm = (comm + comm.conj().T) / 2.0
    analytic = 2.0 * generalized_spectral_norm(validate_hermitian(comm), wv)
    return float(scaled), float(analytic)

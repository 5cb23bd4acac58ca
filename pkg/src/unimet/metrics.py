"""Weighted eigenphase measures on unitary matrices.

The basic quantity is a weighted sum of absolute eigenphases,

    enorm(U, mu) = sum_j mu_j * abs_phases_desc(U)_j,

with non-increasing, non-negative weights ``mu``.  From it derive a
bi-invariant distance ``emetric(U, V) = enorm(U V^-1)``, a global-phase
insensitive variant ``nenorm(U) = min_x enorm(exp(1j x) U)`` with its
pseudo-metric, and a non-commutativity measure built on the group
commutator ``U V U^-1 V^-1``.

The minimization over the global phase is exact: the objective is
piecewise linear in ``x``, so it suffices to evaluate it on the finite
set of points where some shifted phase crosses 0 or the branch cut, or
where two shifted phases swap rank in absolute value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .haar import SeededRng
from .unitary import (
    UnitaryMatrix,
    WeightVector,
    adjoint,
    compose,
    validate_unitary,
    weight_vector,
    wrap_angle,
)

__all__ = [
    "PhaseShiftMinimum",
    "PhaseShiftMinimizer",
    "lambda_basis",
    "enorm",
    "emetric",
    "nenorm",
    "nemetric",
    "noncommutativity",
    "group_commutator",
    "construct_equality_pair",
    "minimal_rotation_unitary",
]

_TWO_PI = 2.0 * np.pi


def lambda_basis(m: int, n: int) -> WeightVector:
    """The weight vector with ``m`` ones followed by ``n - m`` zeros.

    These vectors span all admissible weights: any non-increasing
    non-negative ``mu`` is a non-negative combination of them.
    """
    if not (1 <= m <= n):
        raise ValueError(f"require 1 <= m <= n, got m={m}, n={n}")
    w = np.zeros(n)
    w[:m] = 1.0
    return weight_vector(w)


def enorm(u: UnitaryMatrix, mu) -> float:
    """Weighted sum of the descending absolute eigenphases of ``u``."""
    wv = weight_vector(mu, n=u.n)
    return float(np.dot(wv.weights, u.spectrum.abs_phases_desc))


def emetric(u: UnitaryMatrix, v: UnitaryMatrix, mu) -> float:
    """Bi-invariant distance ``enorm(U V^-1, mu)``."""
    if u.n != v.n:
        raise ValueError("dimension mismatch between the two unitaries")
    return enorm(compose(u, adjoint(v)), mu)


@dataclass(frozen=True)
class PhaseShiftMinimum:
    """Result of minimizing a weighted phase sum over a global phase.

    Attributes
    ----------
    value : float
        The minimum.
    argmin_x : float
        A global phase in ``[0, 2*pi)`` achieving it; ties resolve to the
        smallest such phase.
    candidates_evaluated : int
        Size of the finite candidate set that was scanned.
    """

    value: float
    argmin_x: float
    candidates_evaluated: int


class PhaseShiftMinimizer:
    """Exact minimizer of ``x -> sum_j mu_j * desc(|wrap(theta + x)|)_j``.

    The map is piecewise linear in ``x`` on the circle, with kinks only
    where a shifted phase hits 0 or the cut at pi, or where two shifted
    phases tie in absolute value.  Its minimum is therefore attained on
    the candidate set

        {-theta_k}  u  {pi - theta_k}  u  {-(theta_j + theta_k)/2 (mod pi)},

    all taken mod 2*pi.  One instance can serve many weight vectors; the
    candidate table depends on the phases alone.
    """

    def __init__(self, phases):
        th = np.atleast_1d(np.asarray(phases, dtype=float))
        if th.ndim != 1 or th.shape[0] == 0:
            raise ValueError("phases must be a nonempty 1-d sequence")
        n = th.shape[0]
        parts = [np.mod(-th, _TWO_PI), np.mod(np.pi - th, _TWO_PI)]
        if n >= 2:
            j, k = np.triu_indices(n, k=1)
            base = np.mod(-(th[j] + th[k]) / 2.0, np.pi)
            parts.append(base)
            parts.append(base + np.pi)
        xs = np.unique(np.mod(np.concatenate(parts), _TWO_PI))
        table = np.abs(wrap_angle(th[None, :] + xs[:, None]))
        table = np.atleast_2d(table)
        table.sort(axis=1)  # ascending; paired below with reversed weights
        self.phases = th
        self.candidates = xs
        self._table_asc = table

    def minimize(self, mu) -> PhaseShiftMinimum:
        wv = weight_vector(mu, n=self.phases.shape[0])
        values = self._table_asc @ wv.weights[::-1]
        i = int(np.argmin(values))  # first occurrence = smallest x on ties
        return PhaseShiftMinimum(
            value=float(values[i]),
            argmin_x=float(self.candidates[i]),
            candidates_evaluated=int(self.candidates.shape[0]),
        )


def nenorm(u: UnitaryMatrix, mu) -> PhaseShiftMinimum:
    """Minimum of ``enorm(exp(1j x) U, mu)`` over the global phase ``x``."""
    wv = weight_vector(mu, n=u.n)
    return PhaseShiftMinimizer(u.spectrum.phases).minimize(wv)


def nemetric(u: UnitaryMatrix, v: UnitaryMatrix, mu) -> float:
    """Global-phase insensitive distance: ``nenorm(U V^-1, mu)``.

    A pseudo-metric: it vanishes whenever ``U`` and ``V`` agree up to a
    global phase.
    """
    if u.n != v.n:
        raise ValueError("dimension mismatch between the two unitaries")
    return nenorm(compose(u, adjoint(v)), mu).value


def group_commutator(u: UnitaryMatrix, v: UnitaryMatrix) -> UnitaryMatrix:
    """``U V U^-1 V^-1`` (inverses realized as adjoints)."""
    if u.n != v.n:
        raise ValueError("dimension mismatch between the two unitaries")
    return compose(u, v, adjoint(u), adjoint(v))


def noncommutativity(u: UnitaryMatrix, v: UnitaryMatrix, mu) -> float:
    """Weighted eigenphase measure of the group commutator of ``u, v``.

    Vanishes iff the two matrices commute; insensitive to global phases
    of either argument.
    """
    return enorm(group_commutator(u, v), mu)


def construct_equality_pair(n: int, rng_seed: int) -> tuple[UnitaryMatrix, UnitaryMatrix]:
    """Seeded pair of diagonal unitaries that saturates the triangle bound.

    Both factors have non-negative phases, descending in the same index
    order, with pairwise sums at most pi.  Under these conditions the
    phases of the product are the index-wise sums, so

        enorm(U V, mu) = enorm(U, mu) + enorm(V, mu)

    holds for every admissible weight vector ``mu``.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    gen = SeededRng(seed=rng_seed, stream_id=0).generator()
    split = gen.uniform(0.0, np.pi)
    theta = np.sort(gen.uniform(0.0, split, n))[::-1]
    phi = np.sort(gen.uniform(0.0, np.pi - split, n))[::-1]
    u = validate_unitary(np.diag(np.exp(1j * theta)))
    v = validate_unitary(np.diag(np.exp(1j * phi)))
    return u, v


def minimal_rotation_unitary(psi1, psi2) -> UnitaryMatrix:
    """Planar rotation carrying one state onto another, identity elsewhere.

    Rotates by the angle ``chi = arccos |<psi1|psi2>|`` inside
    ``span{psi1, psi2}`` and acts as the identity on the orthogonal
    complement, so the eigenphases are ``{chi, 0, ..., 0, -chi}`` -- the
    cheapest spectrum that still connects the two rays.  ``U psi1`` equals
    ``psi2`` up to the phase ``exp(-1j * arg<psi1|psi2>)``, which makes the
    overlap with the phase-aligned target real and positive.  Parallel
    inputs return the identity.
    """
    a = np.asarray(psi1, dtype=complex)
    b = np.asarray(psi2, dtype=complex)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise ValueError("states must be 1-d vectors of equal dimension")
    n = a.shape[0]
    if n < 2:
        raise ValueError("states must live in dimension >= 2")
    for name, vec in (("psi1", a), ("psi2", b)):
        nrm = np.linalg.norm(vec)
        if abs(nrm - 1.0) > 1e-8:
            raise ValueError(f"{name} is not normalized: |{name}| = {nrm!r}")
    c = np.vdot(a, b)
    if abs(c) >= 1.0 - 1e-12:
        return validate_unitary(np.eye(n, dtype=complex))
    gamma = float(np.angle(c)) if abs(c) > 1e-14 else 0.0
    b_aligned = b * np.exp(-1j * gamma)
    overlap = abs(c)
    chi = float(np.arccos(np.clip(overlap, 0.0, 1.0)))
    e1 = a
    e2 = b_aligned - overlap * e1
    e2 = e2 / np.linalg.norm(e2)  # norm is sin(chi) > 0 here
    p1 = np.outer(e1, e1.conj())
    p2 = np.outer(e2, e2.conj())
    m = (
        np.eye(n, dtype=complex)
        + (np.cos(chi) - 1.0) * (p1 + p2)
        + np.sin(chi) * (np.outer(e2, e1.conj()) - np.outer(e1, e2.conj()))
    )
    return validate_unitary(m)

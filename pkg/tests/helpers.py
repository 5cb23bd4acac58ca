"""Independent oracles shared by the test modules.

Everything here recomputes results from first principles with algorithms
that differ from the package's own (atan2-based wrapping, characteristic
polynomial roots, factorial enumeration, dense grids), so agreement is a
meaningful check rather than the same code run twice.
"""

import itertools

import numpy as np


def wrap_ref(phi):
    """Wrap angles into (-pi, pi] via complex exponentials.

    The package folds with modular arithmetic; going through exp/angle is
    a genuinely different code path with the same contract.
    """
    out = np.angle(np.exp(1j * np.asarray(phi, dtype=float)))
    scalar = out.ndim == 0
    out = np.atleast_1d(out)
    out[out <= -np.pi + 1e-12] = np.pi
    return float(out[0]) if scalar else out


def eigenphases_ref(matrix):
    """Eigenphases from the characteristic polynomial's companion roots."""
    coeffs = np.poly(np.asarray(matrix, dtype=complex))
    roots = np.roots(coeffs)
    return np.angle(roots / np.abs(roots))


def circular_match_gap(phases_a, phases_b):
    """Greedy multiset matching distance between two phase sets.

    Works on the unit circle so +pi and -pi (or 0 and 2pi) compare equal.
    """
    za = np.exp(1j * np.asarray(phases_a, dtype=float))
    zb = list(np.exp(1j * np.asarray(phases_b, dtype=float)))
    assert len(za) == len(zb)
    worst = 0.0
    for z in za:
        dists = [abs(z - w) for w in zb]
        k = int(np.argmin(dists))
        worst = max(worst, dists[k])
        zb.pop(k)
    return worst


def weighted_phase_sum(phases, mu, x):
    """Objective minimized by the phase-shift search, evaluated directly."""
    w = np.abs(wrap_ref(np.asarray(phases, dtype=float) + x))
    return float(np.dot(np.sort(w)[::-1], np.asarray(mu, dtype=float)))


def grid_nenorm(phases, mu, points=10**6):
    """Dense-grid upper bound for the phase-shift minimum.

    The true minimum lies within (2*pi/points) * sum(mu) below the grid
    value because the objective is piecewise linear with slope bounded by
    the total weight.
    """
    phases = np.asarray(phases, dtype=float)
    mu = np.asarray(mu, dtype=float)
    best = np.inf
    chunk = 200_000
    for start in range(0, points, chunk):
        xs = (2.0 * np.pi / points) * np.arange(start, min(start + chunk, points))
        w = np.mod(phases[None, :] + xs[:, None] + np.pi, 2.0 * np.pi) - np.pi
        table = np.sort(np.abs(w), axis=1)
        best = min(best, float(np.min(table @ mu[::-1])))
    return best


def median_inequalities_hold(eigs, probs, m):
    """Both half-mass conditions at candidate median m, with exact sums."""
    eigs = np.asarray(eigs, dtype=float)
    probs = np.asarray(probs, dtype=float)
    below = float(np.sum(probs[eigs <= m]))
    above = float(np.sum(probs[eigs >= m]))
    return below >= 0.5 - 1e-12 and above >= 0.5 - 1e-12


def mad_grid_min(eigs, probs, points=100_000):
    """Grid minimum of the weighted absolute deviation."""
    eigs = np.asarray(eigs, dtype=float)
    probs = np.asarray(probs, dtype=float)
    lo, hi = eigs.min() - 1.0, eigs.max() + 1.0
    xs = np.linspace(lo, hi, points)
    vals = np.abs(eigs[None, :] - xs[:, None]) @ probs
    return float(vals.min()), (hi - lo) / (points - 1)


def rearrangement_brute(x, y):
    """Maximum pairing sum over every permutation."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return max(float(np.dot(x, np.asarray(p))) for p in itertools.permutations(y))


def kron_index_formula(a, b):
    """Kronecker product assembled entry by entry from the definition."""
    a = np.asarray(a)
    b = np.asarray(b)
    n1, n2 = a.shape[0], b.shape[0]
    out = np.empty((n1 * n2, n1 * n2), dtype=complex)
    for i in range(n1 * n2):
        for j in range(n1 * n2):
            out[i, j] = a[i // n2, j // n2] * b[i % n2, j % n2]
    return out


PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1j], [1j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

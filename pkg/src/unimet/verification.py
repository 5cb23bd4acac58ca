"""Runtime property suite: every structural invariant, checked by sampling.

Each invariant owns a pure ``margin(inputs) -> float`` function, where a
non-negative margin means the trial passed and the magnitude is the
distance to violation.  Inputs are generated from per-trial seeded
streams, can be serialized to JSON when a violation is found, and can be
replayed later: recomputing the margin of a dumped counterexample is
deterministic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.stats

from .haar import SeededRng, haar_unitary
from .matrixio import matrix_from_dict, matrix_to_dict
from .metrics import (
    PhaseShiftMinimizer,
    enorm,
    emetric,
    group_commutator,
    lambda_basis,
    nemetric,
    nenorm,
    noncommutativity,
)
from .resources import (
    derivative_check_enorm,
    curvature_check_comm,
    evolution_unitary,
    generator_from_unitary,
    generalized_spectral_norm,
    mean_abs_dev_from_median,
    median_energy,
    random_hermitian,
    rearrangement_max,
    resource_R,
    validate_hermitian,
)
from .unitary import (
    adjoint,
    compose,
    kron,
    matrix_power,
    validate_unitary,
    weight_vector,
    wrap_angle,
)

__all__ = [
    "Invariant",
    "InvariantResult",
    "SuiteReport",
    "INVARIANTS",
    "invariant_names",
    "run_property_suite",
    "replay_counterexample",
]

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


# ---------------------------------------------------------------------------
# input generation helpers
# ---------------------------------------------------------------------------

def _dim(gen, lo=2, hi=5) -> int:
    return int(gen.integers(lo, hi + 1))


def _haar_arr(gen, n) -> np.ndarray:
    return haar_unitary(n, gen).matrix


def _haar_safe_arr(gen, n, guard=1e-6) -> np.ndarray:
    """Haar sample resampled until no eigenphase sits near the cut at pi."""
    for _ in range(64):
        u = haar_unitary(n, gen)
        if np.max(np.abs(u.spectrum.phases)) < np.pi - guard:
            return u.matrix
    raise RuntimeError("failed to sample away from the branch cut")  # pragma: no cover


def _random_mu(gen, n) -> np.ndarray:
    w = np.sort(gen.uniform(0.05, 1.0, n))[::-1]
    if n > 1 and gen.uniform() < 0.3:
        w[gen.integers(1, n):] = 0.0
    return w


def _random_probs(gen, n) -> np.ndarray:
    p = gen.uniform(0.05, 1.0, n)
    p = np.sort(p / np.sum(p))[::-1]
    p[-1] += 1.0 - np.sum(p)  # exact unit mass
    return np.sort(p)[::-1]


def _sorted_gap(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(np.sort(a) - np.sort(b))))


# ---------------------------------------------------------------------------
# registry plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Invariant:
    name: str
    description: str
    generate: Callable[[np.random.Generator], dict]
    margin: Callable[[dict], float]
    trials: int | None = None  # None -> ExperimentConfig.samples


@dataclass
class InvariantResult:
    name: str
    trials: int
    worst_margin: float
    passed: bool
    counterexample_path: str | None = None


@dataclass
class SuiteReport:
    results: list[InvariantResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[InvariantResult]:
        return [r for r in self.results if not r.passed]


def _encode_value(v):
    if isinstance(v, np.ndarray) and v.ndim == 2:
        return {"kind": "matrix", **matrix_to_dict(v)}
    if isinstance(v, np.ndarray) and v.ndim == 1 and np.iscomplexobj(v):
        return {"kind": "cvector", "re": v.real.tolist(), "im": v.imag.tolist()}
    if isinstance(v, np.ndarray) and v.ndim == 1:
        return {"kind": "vector", "values": [float(x) for x in v]}
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, str):
        return v
    raise TypeError(f"cannot serialize input of type {type(v)!r}")


def _decode_value(v):
    if isinstance(v, dict) and v.get("kind") == "matrix":
        return matrix_from_dict({k: v[k] for k in ("n", "re", "im")})
    if isinstance(v, dict) and v.get("kind") == "cvector":
        return np.asarray(v["re"], dtype=float) + 1j * np.asarray(v["im"], dtype=float)
    if isinstance(v, dict) and v.get("kind") == "vector":
        return np.asarray(v["values"], dtype=float)
    return v


def encode_inputs(inputs: dict) -> dict:
    return {k: _encode_value(v) for k, v in inputs.items()}


def decode_inputs(doc: dict) -> dict:
    if not isinstance(doc, dict):
        raise ValueError("counterexample inputs must be a JSON object")
    return {k: _decode_value(v) for k, v in doc.items()}


# ---------------------------------------------------------------------------
# eigenphase spectrum invariants
# ---------------------------------------------------------------------------

def _gen_single_safe(gen):
    n = _dim(gen)
    return {"u": _haar_safe_arr(gen, n)}


def _margin_inverse_phase_reversal(inputs):
    u = validate_unitary(inputs["u"])
    fwd = u.spectrum.phases_desc
    rev = adjoint(u).spectrum.phases_desc
    return 1e-9 - float(np.max(np.abs(fwd + rev[::-1])))


def _margin_inverse_abs_phases(inputs):
    u = validate_unitary(inputs["u"])
    return 1e-9 - float(
        np.max(np.abs(u.spectrum.abs_phases_desc - adjoint(u).spectrum.abs_phases_desc))
    )


def _margin_signed_below_abs(inputs):
    s = validate_unitary(inputs["u"]).spectrum
    return float(np.min(s.abs_phases_desc - s.phases_desc))


def _gen_power(gen):
    n = _dim(gen)
    for _ in range(64):
        u = _haar_safe_arr(gen, n)
        a = float(gen.uniform(-3.0, 3.0))
        phases = validate_unitary(u).spectrum.phases
        scaled = np.abs(wrap_angle(a * phases))
        if np.max(scaled) < np.pi - 1e-6 and abs(a) > 0.05:
            return {"u": u, "a": a}
    raise RuntimeError("no safe power found")  # pragma: no cover


def _margin_power_phase_multiset(inputs):
    u = validate_unitary(inputs["u"])
    a = float(inputs["a"])
    expected = wrap_angle(a * u.spectrum.phases)
    actual = matrix_power(u, a).spectrum.phases
    return 1e-8 - _sorted_gap(expected, actual)


def _gen_kron(gen):
    for _ in range(64):
        n1, n2 = _dim(gen, 2, 3), _dim(gen, 2, 3)
        u1, u2 = _haar_safe_arr(gen, n1), _haar_safe_arr(gen, n2)
        p1 = validate_unitary(u1).spectrum.phases
        p2 = validate_unitary(u2).spectrum.phases
        sums = wrap_angle((p1[:, None] + p2[None, :]).ravel())
        if np.max(np.abs(sums)) < np.pi - 1e-6:
            return {"u1": u1, "u2": u2}
    raise RuntimeError("no safe tensor pair found")  # pragma: no cover


def _margin_kron_phase_multiset(inputs):
    u1 = validate_unitary(inputs["u1"])
    u2 = validate_unitary(inputs["u2"])
    p1 = u1.spectrum.phases
    p2 = u2.spectrum.phases
    expected = wrap_angle((p1[:, None] + p2[None, :]).ravel())
    actual = kron(u1, u2).spectrum.phases
    return 1e-8 - _sorted_gap(expected, actual)


# ---------------------------------------------------------------------------
# measure and metric invariants
# ---------------------------------------------------------------------------

def _gen_pair_mu(gen):
    n = _dim(gen)
    return {"u": _haar_arr(gen, n), "v": _haar_arr(gen, n), "mu": _random_mu(gen, n)}


def _gen_triple_mu(gen):
    n = _dim(gen)
    return {
        "u": _haar_arr(gen, n),
        "v": _haar_arr(gen, n),
        "w": _haar_arr(gen, n),
        "mu": _random_mu(gen, n),
    }


def _gen_single_mu(gen):
    n = _dim(gen)
    return {"u": _haar_arr(gen, n), "mu": _random_mu(gen, n)}


def _margin_enorm_triangle(inputs):
    u, v = validate_unitary(inputs["u"]), validate_unitary(inputs["v"])
    mu = weight_vector(inputs["mu"])
    nu_u, nu_v = enorm(u, mu), enorm(v, mu)
    nu_uv = enorm(compose(u, v), mu)
    upper = nu_u + nu_v - nu_uv
    lower = nu_uv - abs(nu_u - nu_v)
    return min(upper, lower) + 1e-9


def _margin_nenorm_triangle(inputs):
    u, v = validate_unitary(inputs["u"]), validate_unitary(inputs["v"])
    mu = weight_vector(inputs["mu"])
    nu_u, nu_v = nenorm(u, mu).value, nenorm(v, mu).value
    nu_uv = nenorm(compose(u, v), mu).value
    upper = nu_u + nu_v - nu_uv
    lower = nu_uv - abs(nu_u - nu_v)
    return min(upper, lower) + 1e-9


def _margin_emetric_symmetry(inputs):
    u, v = validate_unitary(inputs["u"]), validate_unitary(inputs["v"])
    mu = weight_vector(inputs["mu"])
    return 1e-9 - abs(emetric(u, v, mu) - emetric(v, u, mu))


def _margin_emetric_identity(inputs):
    u = validate_unitary(inputs["u"])
    return 1e-12 - emetric(u, u, weight_vector(inputs["mu"]))


def _margin_emetric_separation(inputs):
    u, v = validate_unitary(inputs["u"]), validate_unitary(inputs["v"])
    return emetric(u, v, weight_vector(inputs["mu"])) - 1e-6


def _margin_emetric_triangle(inputs):
    u = validate_unitary(inputs["u"])
    v = validate_unitary(inputs["v"])
    w = validate_unitary(inputs["w"])
    mu = weight_vector(inputs["mu"])
    return emetric(u, v, mu) + emetric(v, w, mu) - emetric(u, w, mu) + 1e-9


def _margin_emetric_bi_invariance(inputs):
    u = validate_unitary(inputs["u"])
    v = validate_unitary(inputs["v"])
    w = validate_unitary(inputs["w"])
    mu = weight_vector(inputs["mu"])
    d = emetric(u, v, mu)
    left = emetric(compose(w, u), compose(w, v), mu)
    right = emetric(compose(u, w), compose(v, w), mu)
    return 1e-9 - max(abs(left - d), abs(right - d))


def _margin_emetric_antipode(inputs):
    u = validate_unitary(inputs["u"])
    mu = weight_vector(inputs["mu"])
    anti = validate_unitary(-u.matrix)
    return 1e-9 - abs(emetric(u, anti, mu) - np.pi * mu.total)


def _margin_enorm_decomposition(inputs):
    u = validate_unitary(inputs["u"])
    mu = weight_vector(inputs["mu"])
    w = mu.weights
    n = u.n
    total = 0.0
    for j in range(1, n):
        total += (w[j - 1] - w[j]) * enorm(u, lambda_basis(j, n))
    total += w[n - 1] * enorm(u, lambda_basis(n, n))
    return 1e-10 - abs(enorm(u, mu) - total)


def _margin_nenorm_decomposition_lower(inputs):
    u = validate_unitary(inputs["u"])
    mu = weight_vector(inputs["mu"])
    w = mu.weights
    n = u.n
    minimizer = PhaseShiftMinimizer(u.spectrum.phases)
    total = 0.0
    for j in range(1, n):
        total += (w[j - 1] - w[j]) * minimizer.minimize(lambda_basis(j, n)).value
    total += w[n - 1] * minimizer.minimize(lambda_basis(n, n)).value
    return minimizer.minimize(mu).value - total + 1e-9


def _margin_enorm_inverse_conjugation(inputs):
    u = validate_unitary(inputs["u"])
    w = validate_unitary(inputs["v"])
    mu = weight_vector(inputs["mu"])
    base = enorm(u, mu)
    inv_gap = abs(enorm(adjoint(u), mu) - base)
    conj_gap = abs(enorm(compose(w, u, adjoint(w)), mu) - base)
    return 1e-9 - max(inv_gap, conj_gap)


def _gen_pair_mu_phase(gen):
    d = _gen_pair_mu(gen)
    d["x"] = float(gen.uniform(0.0, 2.0 * np.pi))
    return d


def _margin_nenorm_invariances(inputs):
    u = validate_unitary(inputs["u"])
    w = validate_unitary(inputs["v"])
    mu = weight_vector(inputs["mu"])
    x = float(inputs["x"])
    base = nenorm(u, mu).value
    shifted = nenorm(validate_unitary(np.exp(1j * x) * u.matrix), mu).value
    inv = nenorm(adjoint(u), mu).value
    conj = nenorm(compose(w, u, adjoint(w)), mu).value
    return 1e-9 - max(abs(shifted - base), abs(inv - base), abs(conj - base))


def _gen_scaling(gen):
    d = _gen_pair_mu(gen)
    d["scale"] = float(gen.uniform(0.1, 5.0))
    return d


def _margin_weight_scaling(inputs):
    u, v = validate_unitary(inputs["u"]), validate_unitary(inputs["v"])
    mu = weight_vector(inputs["mu"])
    a = float(inputs["scale"])
    scaled = weight_vector(a * mu.weights)
    gaps = [
        abs(enorm(u, scaled) - a * enorm(u, mu)),
        abs(nenorm(u, scaled).value - a * nenorm(u, mu).value),
        abs(noncommutativity(u, v, scaled) - a * noncommutativity(u, v, mu)),
    ]
    return 1e-9 * max(1.0, a) - max(gaps)


def _gen_power_bound(gen):
    n = _dim(gen)
    b = float(gen.uniform(-3.0, 3.0))
    return {"u": _haar_arr(gen, n), "mu": _random_mu(gen, n), "b": b}


def _margin_power_bound(inputs):
    u = validate_unitary(inputs["u"])
    mu = weight_vector(inputs["mu"])
    b = float(inputs["b"])
    return abs(b) * enorm(u, mu) - enorm(matrix_power(u, b), mu) + 1e-9


def _gen_power_equality(gen):
    n = _dim(gen)
    u = _haar_safe_arr(gen, n)
    top = float(np.max(validate_unitary(u).spectrum.abs_phases_desc))
    r = float(gen.uniform(0.05, 0.999))
    sign = -1.0 if gen.uniform() < 0.5 else 1.0
    return {"u": u, "mu": _random_mu(gen, n), "b": sign * r * np.pi / top}


def _margin_power_equality(inputs):
    u = validate_unitary(inputs["u"])
    mu = weight_vector(inputs["mu"])
    b = float(inputs["b"])
    return 1e-9 - abs(enorm(matrix_power(u, b), mu) - abs(b) * enorm(u, mu))


def _gen_collapse(gen):
    n = _dim(gen, 2, 6)
    return {"u": _haar_arr(gen, n)}


def _margin_nenorm_collapse(inputs):
    # The only exact degeneracies in the ones-prefix ladder: doubling at
    # m = 2, and the top pair m = n, n - 1 in odd dimensions.  Interior odd
    # prefixes do not collapse (diag(1, 1, -1, -1) has minimized values
    # m*pi/2, so m = 3 differs from m = 2 by pi/2 there).
    u = validate_unitary(inputs["u"])
    n = u.n
    minimizer = PhaseShiftMinimizer(u.spectrum.phases)
    by_m = {m: minimizer.minimize(lambda_basis(m, n)).value for m in range(1, n + 1)}
    gaps = [abs(by_m[2] - 2.0 * by_m[1])]
    if n >= 3 and n % 2 == 1:
        gaps.append(abs(by_m[n] - by_m[n - 1]))
    return 1e-9 - max(gaps)


def _gen_surjectivity(gen):
    n = _dim(gen, 2, 4)
    return {"mu": _random_mu(gen, n), "n": n}


def _margin_enorm_surjectivity(inputs):
    mu = weight_vector(inputs["mu"])
    n = int(inputs["n"])
    worst = 0.0
    for c in np.linspace(0.0, np.pi * mu.total, 100):
        s = c / mu.total
        u = validate_unitary(np.exp(1j * s) * np.eye(n))
        worst = max(worst, abs(enorm(u, mu) - c))
    return 1e-9 - worst


def _gen_tensor(gen):
    n1, n2 = _dim(gen, 2, 3), _dim(gen, 2, 3)
    return {"u1": _haar_arr(gen, n1), "u2": _haar_arr(gen, n2)}


def _margin_tensor_bound_top_weight(inputs):
    u1 = validate_unitary(inputs["u1"])
    u2 = validate_unitary(inputs["u2"])
    big = kron(u1, u2)
    lhs = enorm(big, lambda_basis(1, big.n))
    rhs = enorm(u1, lambda_basis(1, u1.n)) + enorm(u2, lambda_basis(1, u2.n))
    return rhs - lhs + 1e-9


def _margin_tensor_bound_full_weight(inputs):
    u1 = validate_unitary(inputs["u1"])
    u2 = validate_unitary(inputs["u2"])
    big = kron(u1, u2)
    lhs = enorm(big, lambda_basis(big.n, big.n))
    rhs = u2.n * enorm(u1, lambda_basis(u1.n, u1.n)) + u1.n * enorm(
        u2, lambda_basis(u2.n, u2.n)
    )
    return rhs - lhs + 1e-9


def _margin_nenorm_tensor_bound(inputs):
    u1 = validate_unitary(inputs["u1"])
    u2 = validate_unitary(inputs["u2"])
    big = kron(u1, u2)
    lhs = nenorm(big, lambda_basis(1, big.n)).value
    rhs = (
        nenorm(u1, lambda_basis(1, u1.n)).value
        + nenorm(u2, lambda_basis(1, u2.n)).value
    )
    return rhs - lhs + 1e-9


def _gen_comm_phase(gen):
    d = _gen_pair_mu(gen)
    d["x"] = float(gen.uniform(0.0, 2.0 * np.pi))
    d["y"] = float(gen.uniform(0.0, 2.0 * np.pi))
    return d


def _margin_comm_phase_invariance(inputs):
    u, v = validate_unitary(inputs["u"]), validate_unitary(inputs["v"])
    mu = weight_vector(inputs["mu"])
    x, y = float(inputs["x"]), float(inputs["y"])
    base = noncommutativity(u, v, mu)
    shifted = noncommutativity(
        validate_unitary(np.exp(1j * x) * u.matrix),
        validate_unitary(np.exp(1j * y) * v.matrix),
        mu,
    )
    return 1e-9 - abs(shifted - base)


def _margin_comm_inverse_conjugation(inputs):
    u = validate_unitary(inputs["u"])
    v = validate_unitary(inputs["v"])
    w = validate_unitary(inputs["w"])
    mu = weight_vector(inputs["mu"])
    base = noncommutativity(u, v, mu)
    inv = noncommutativity(adjoint(u), adjoint(v), mu)
    conj = noncommutativity(
        compose(w, u, adjoint(w)), compose(w, v, adjoint(w)), mu
    )
    return 1e-9 - max(abs(inv - base), abs(conj - base))


def _gen_comm_tensor(gen):
    n1, n2 = _dim(gen, 2, 3), _dim(gen, 2, 3)
    return {
        "a1": _haar_arr(gen, n1),
        "a2": _haar_arr(gen, n1),
        "b1": _haar_arr(gen, n2),
        "b2": _haar_arr(gen, n2),
    }


def _margin_comm_tensor_bound(inputs):
    a1, a2 = validate_unitary(inputs["a1"]), validate_unitary(inputs["a2"])
    b1, b2 = validate_unitary(inputs["b1"]), validate_unitary(inputs["b2"])
    lhs = noncommutativity(
        kron(a1, b1), kron(a2, b2), lambda_basis(1, a1.n * b1.n)
    )
    rhs = noncommutativity(a1, a2, lambda_basis(1, a1.n)) + noncommutativity(
        b1, b2, lambda_basis(1, b1.n)
    )
    return rhs - lhs + 1e-9


def _gen_pauli_mu(gen):
    return {"mu": _random_mu(gen, 2)}


def _margin_comm_pauli_extremal(inputs):
    mu = weight_vector(inputs["mu"])
    target = np.pi * mu.total
    worst = 0.0
    for a, b in (("x", "y"), ("y", "z"), ("z", "x")):
        c = noncommutativity(
            validate_unitary(_PAULI[a]), validate_unitary(_PAULI[b]), mu
        )
        worst = max(worst, abs(c - target))
    return 1e-9 - worst


def _gen_commuting(gen):
    n = _dim(gen)
    u = np.diag(np.exp(1j * gen.uniform(-3.0, 3.0, n)))
    v = np.diag(np.exp(1j * gen.uniform(-3.0, 3.0, n)))
    return {"u": u, "v": v, "mu": _random_mu(gen, n)}


def _margin_comm_commuting_zero(inputs):
    u, v = validate_unitary(inputs["u"]), validate_unitary(inputs["v"])
    return 1e-12 - noncommutativity(u, v, weight_vector(inputs["mu"]))


# ---------------------------------------------------------------------------
# sampling invariants
# ---------------------------------------------------------------------------

def _gen_seed_only(gen):
    return {"seed": int(gen.integers(0, 2**63))}


def _margin_haar_left_invariance_ks(inputs):
    seed = int(inputs["seed"])
    n, count = 3, 1000
    mu = lambda_basis(1, n)
    base = SeededRng(seed=seed, stream_id=0)
    w = haar_unitary(n, base.stream(1))
    gen_a = base.stream(2).generator()
    gen_b = base.stream(3).generator()
    plain = np.array([enorm(haar_unitary(n, gen_a), mu) for _ in range(count)])
    moved = np.array(
        [enorm(compose(w, haar_unitary(n, gen_b)), mu) for _ in range(count)]
    )
    p = float(scipy.stats.ks_2samp(plain, moved).pvalue)
    return p - 1e-3


def _margin_rng_determinism(inputs):
    seed = int(inputs["seed"])
    a = SeededRng(seed=seed, stream_id=7).generator().integers(0, 2**63, 64)
    b = SeededRng(seed=seed, stream_id=7).generator().integers(0, 2**63, 64)
    c = SeededRng(seed=seed, stream_id=8).generator().integers(0, 2**63, 64)
    if not np.array_equal(a, b):
        return -1.0
    if np.array_equal(a, c):
        return -1.0
    return 0.0


# ---------------------------------------------------------------------------
# energy statistics invariants
# ---------------------------------------------------------------------------

def _gen_distribution(gen):
    n = _dim(gen, 2, 8)
    eigs = gen.normal(0.0, 2.0, n)
    if n >= 3 and gen.uniform() < 0.3:
        eigs[1] = eigs[0]  # force a degenerate level now and then
    probs = gen.uniform(0.05, 1.0, n)
    probs = probs / np.sum(probs)
    probs[-1] += 1.0 - np.sum(probs)
    return {"eigs": eigs, "probs": probs}


def _brute_median_interval(eigs, probs):
    lo, hi = None, None
    for v in np.sort(eigs):
        left = float(np.sum(probs[eigs <= v]))
        right = float(np.sum(probs[eigs >= v]))
        if left >= 0.5 - 1e-12 and right >= 0.5 - 1e-12:
            lo = v if lo is None else lo
            hi = v
    return lo, hi


def _margin_median_interval(inputs):
    eigs = np.asarray(inputs["eigs"], dtype=float)
    probs = np.asarray(inputs["probs"], dtype=float)
    interval = median_energy(eigs, probs)
    lo, hi = _brute_median_interval(eigs, probs)
    gap = max(abs(interval.lo - lo), abs(interval.hi - hi))
    mid_gap = abs(interval.canonical - (interval.lo + interval.hi) / 2.0)
    return 1e-12 - max(gap, mid_gap)


def _margin_mad_optimality(inputs):
    eigs = np.asarray(inputs["eigs"], dtype=float)
    probs = np.asarray(inputs["probs"], dtype=float)
    de = mean_abs_dev_from_median(eigs, probs)
    lo, hi = float(np.min(eigs)) - 1.0, float(np.max(eigs)) + 1.0
    grid = np.linspace(lo, hi, 4001)
    costs = np.abs(eigs[None, :] - grid[:, None]) @ probs
    return float(np.min(costs)) - de + 1e-9


def _gen_rearrangement(gen):
    n = _dim(gen, 2, 6)
    x = np.sort(gen.uniform(-3.0, 3.0, n))[::-1]
    y = gen.uniform(-3.0, 3.0, n)
    return {"x": x, "y": y}


def _margin_rearrangement_bruteforce(inputs):
    x = np.asarray(inputs["x"], dtype=float)
    y = np.asarray(inputs["y"], dtype=float)
    best = max(
        float(np.dot(x, np.array(p))) for p in itertools.permutations(y)
    )
    return 1e-10 - abs(rearrangement_max(x, y) - best)


def _margin_generator_roundtrip(inputs):
    u = validate_unitary(inputs["u"])
    h = generator_from_unitary(u)
    rebuilt = scipy.linalg.expm(-1j * h.matrix)
    return 1e-8 - float(np.max(np.abs(rebuilt - u.matrix)))


def _margin_generator_phase_range(inputs):
    u = validate_unitary(inputs["u"])
    vals = generator_from_unitary(u).eigenvalues
    return min(float(np.min(vals)) + np.pi, np.pi - float(np.max(vals))) + 1e-12


def _gen_resource(gen):
    n = _dim(gen, 2, 5)
    return {
        "u": _haar_arr(gen, n),
        "probs": _random_probs(gen, n),
        "x": float(gen.uniform(0.0, 2.0 * np.pi)),
    }


def _margin_resource_gauge(inputs):
    u = validate_unitary(inputs["u"])
    probs = np.asarray(inputs["probs"], dtype=float)
    x = float(inputs["x"])
    shifted = validate_unitary(np.exp(1j * x) * u.matrix)
    return 1e-10 - abs(resource_R(shifted, probs) - resource_R(u, probs))


def _margin_resource_below_enorm(inputs):
    u = validate_unitary(inputs["u"])
    probs = np.asarray(inputs["probs"], dtype=float)
    return enorm(u, weight_vector(probs)) - resource_R(u, probs) + 1e-12


def _gen_hermitian_mu(gen):
    n = _dim(gen, 2, 4)
    return {"h": random_hermitian(n, gen).matrix, "mu": _random_mu(gen, n)}


def _margin_derivative_law(inputs):
    h = validate_hermitian(inputs["h"])
    mu = weight_vector(inputs["mu"])
    fd, analytic = derivative_check_enorm(h, mu, 1e-3)
    return 1e-9 - abs(fd - analytic)


def _gen_hermitian_pair(gen):
    n = _dim(gen, 2, 3)
    for _ in range(64):
        h1 = random_hermitian(n, gen)
        h2 = random_hermitian(n, gen)
        comm = -1j * (h1.matrix @ h2.matrix - h2.matrix @ h1.matrix)
        strength = generalized_spectral_norm(
            validate_hermitian((comm + comm.conj().T) / 2.0), lambda_basis(1, n)
        )
        if strength > 0.1:
            return {"h1": h1.matrix, "h2": h2.matrix, "mu": _random_mu(gen, n)}
    raise RuntimeError("no usable Hamiltonian pair")  # pragma: no cover


def _margin_curvature_law(inputs):
    h1 = validate_hermitian(inputs["h1"])
    h2 = validate_hermitian(inputs["h2"])
    mu = weight_vector(inputs["mu"])

    def rel(t):
        scaled, analytic = curvature_check_comm(h1, h2, mu, t)
        return abs(scaled - analytic) / analytic

    fine, coarse = rel(1e-3), rel(1e-2)
    return min(1e-2 - fine, coarse - fine)


def _gen_lipschitz(gen):
    n = 3
    h = random_hermitian(n, gen).matrix
    return {"h": h, "mu": _random_mu(gen, n)}


def _margin_enorm_lipschitz(inputs):
    h = validate_hermitian(inputs["h"])
    mu = weight_vector(inputs["mu"])
    lips = mu.total * float(np.sum(np.abs(h.eigenvalues)))
    ts = np.linspace(0.0, 1.0, 101)
    delta = ts[1] - ts[0]
    values, near_cut = [], []
    for t in ts:
        u = evolution_unitary(h, t)
        values.append(enorm(u, mu))
        near_cut.append(np.max(np.abs(u.spectrum.phases)) > np.pi - 1e-3)
    worst = np.inf
    for i in range(len(ts) - 1):
        if near_cut[i] or near_cut[i + 1]:
            continue
        worst = min(worst, lips * delta + 1e-9 - abs(values[i + 1] - values[i]))
    return float(worst)


# ---------------------------------------------------------------------------
# the registry
# ---------------------------------------------------------------------------

INVARIANTS: list[Invariant] = [
    Invariant(
        "inverse_phase_reversal",
        "descending phases of the inverse are the negated, reversed phases",
        _gen_single_safe,
        _margin_inverse_phase_reversal,
    ),
    Invariant(
        "inverse_abs_phases",
        "absolute phases are unchanged by inversion",
        _gen_single_safe,
        _margin_inverse_abs_phases,
    ),
    Invariant(
        "signed_below_abs",
        "each descending signed phase is bounded by its absolute counterpart",
        _gen_single_safe,
        _margin_signed_below_abs,
    ),
    Invariant(
        "power_phase_multiset",
        "phases of a real matrix power are the wrapped scaled phases",
        _gen_power,
        _margin_power_phase_multiset,
    ),
    Invariant(
        "kron_phase_multiset",
        "phases of a tensor product are the wrapped phase sums",
        _gen_kron,
        _margin_kron_phase_multiset,
    ),
    Invariant(
        "enorm_triangle",
        "two-sided triangle bound for the plain measure on products",
        _gen_pair_mu,
        _margin_enorm_triangle,
    ),
    Invariant(
        "nenorm_triangle",
        "two-sided triangle bound for the phase-minimized measure",
        _gen_pair_mu,
        _margin_nenorm_triangle,
    ),
    Invariant(
        "emetric_symmetry",
        "distance is symmetric in its arguments",
        _gen_pair_mu,
        _margin_emetric_symmetry,
    ),
    Invariant(
        "emetric_identity",
        "distance from a matrix to itself vanishes",
        _gen_pair_mu,
        _margin_emetric_identity,
    ),
    Invariant(
        "emetric_separation",
        "independent Haar pairs are well separated",
        _gen_pair_mu,
        _margin_emetric_separation,
    ),
    Invariant(
        "emetric_triangle",
        "triangle inequality for the distance",
        _gen_triple_mu,
        _margin_emetric_triangle,
    ),
    Invariant(
        "emetric_bi_invariance",
        "distance is invariant under common left and right factors",
        _gen_triple_mu,
        _margin_emetric_bi_invariance,
    ),
    Invariant(
        "emetric_antipode",
        "distance to the negated matrix saturates the range",
        _gen_pair_mu,
        _margin_emetric_antipode,
    ),
    Invariant(
        "enorm_decomposition",
        "measure equals its telescoped ones-prefix decomposition",
        _gen_single_mu,
        _margin_enorm_decomposition,
    ),
    Invariant(
        "nenorm_decomposition_lower",
        "phase-minimized measure dominates its ones-prefix decomposition",
        _gen_single_mu,
        _margin_nenorm_decomposition_lower,
    ),
    Invariant(
        "enorm_inverse_conjugation",
        "measure is invariant under inversion and unitary conjugation",
        _gen_pair_mu,
        _margin_enorm_inverse_conjugation,
    ),
    Invariant(
        "nenorm_invariances",
        "phase-minimized measure ignores global phase, inversion, conjugation",
        _gen_pair_mu_phase,
        _margin_nenorm_invariances,
    ),
    Invariant(
        "weight_scaling",
        "all measures are positively homogeneous in the weights",
        _gen_scaling,
        _margin_weight_scaling,
    ),
    Invariant(
        "power_bound",
        "measure of a power grows at most linearly in the exponent",
        _gen_power_bound,
        _margin_power_bound,
    ),
    Invariant(
        "power_equality",
        "power bound is tight while no scaled phase leaves the interval",
        _gen_power_equality,
        _margin_power_equality,
    ),
    Invariant(
        "nenorm_collapse",
        "ones-prefix family degeneracies of the phase-minimized measure",
        _gen_collapse,
        _margin_nenorm_collapse,
    ),
    Invariant(
        "enorm_surjectivity",
        "scalar families realize every value in the accessible range",
        _gen_surjectivity,
        _margin_enorm_surjectivity,
    ),
    Invariant(
        "tensor_bound_top_weight",
        "top-weight measure is subadditive under tensor products",
        _gen_tensor,
        _margin_tensor_bound_top_weight,
    ),
    Invariant(
        "tensor_bound_full_weight",
        "full-weight measure obeys the dimension-scaled tensor bound",
        _gen_tensor,
        _margin_tensor_bound_full_weight,
    ),
    Invariant(
        "nenorm_tensor_bound",
        "phase-minimized top-weight measure is subadditive under tensors",
        _gen_tensor,
        _margin_nenorm_tensor_bound,
    ),
    Invariant(
        "comm_phase_invariance",
        "non-commutativity ignores global phases of both arguments",
        _gen_comm_phase,
        _margin_comm_phase_invariance,
    ),
    Invariant(
        "comm_inverse_conjugation",
        "non-commutativity is stable under joint inversion and conjugation",
        _gen_triple_mu,
        _margin_comm_inverse_conjugation,
    ),
    Invariant(
        "comm_tensor_bound",
        "non-commutativity is subadditive under paired tensor products",
        _gen_comm_tensor,
        _margin_comm_tensor_bound,
    ),
    Invariant(
        "comm_pauli_extremal",
        "anticommuting involution pairs saturate the non-commutativity range",
        _gen_pauli_mu,
        _margin_comm_pauli_extremal,
    ),
    Invariant(
        "comm_commuting_zero",
        "commuting pairs have vanishing non-commutativity",
        _gen_commuting,
        _margin_comm_commuting_zero,
    ),
    Invariant(
        "haar_left_invariance_ks",
        "measure statistics are invariant under left translation of Haar samples",
        _gen_seed_only,
        _margin_haar_left_invariance_ks,
        trials=1,
    ),
    Invariant(
        "rng_determinism",
        "identical stream addresses reproduce identical draws",
        _gen_seed_only,
        _margin_rng_determinism,
        trials=3,
    ),
    Invariant(
        "median_interval",
        "median interval endpoints match a brute-force scan",
        _gen_distribution,
        _margin_median_interval,
    ),
    Invariant(
        "mad_optimality",
        "mean absolute deviation is minimized over the median interval",
        _gen_distribution,
        _margin_mad_optimality,
    ),
    Invariant(
        "rearrangement_bruteforce",
        "descending pairing matches the enumerated permutation maximum",
        _gen_rearrangement,
        _margin_rearrangement_bruteforce,
    ),
    Invariant(
        "generator_roundtrip",
        "exponentiating the extracted generator rebuilds the unitary",
        _gen_single_safe,
        _margin_generator_roundtrip,
    ),
    Invariant(
        "generator_phase_range",
        "generator eigenvalues stay inside one principal period",
        _gen_single_safe,
        _margin_generator_phase_range,
    ),
    Invariant(
        "resource_gauge",
        "resource cost ignores the global phase",
        _gen_resource,
        _margin_resource_gauge,
    ),
    Invariant(
        "resource_below_enorm",
        "resource cost never exceeds the unminimized measure",
        _gen_resource,
        _margin_resource_below_enorm,
    ),
    Invariant(
        "derivative_law",
        "small-time growth rate of the measure equals the weighted eigenvalue sum",
        _gen_hermitian_mu,
        _margin_derivative_law,
    ),
    Invariant(
        "curvature_law",
        "small-time non-commutativity curvature matches the commutator norm",
        _gen_hermitian_pair,
        _margin_curvature_law,
    ),
    Invariant(
        "enorm_lipschitz",
        "measure along an evolution is Lipschitz away from the cut",
        _gen_lipschitz,
        _margin_enorm_lipschitz,
    ),
]


def invariant_names() -> list[str]:
    return [inv.name for inv in INVARIANTS]


# ---------------------------------------------------------------------------
# running and replaying
# ---------------------------------------------------------------------------

#: offset keeping suite streams clear of the scatter harness streams
_SUITE_STREAM_BASE = 1 << 52


def run_property_suite(cfg, names=None, progress=None) -> SuiteReport:
    """Check every invariant on freshly sampled inputs.

    Parameters
    ----------
    cfg : ExperimentConfig
        ``samples`` is the per-invariant trial count (statistical checks
        pin their own), ``seed`` addresses all streams, ``output_dir``
        receives counterexample dumps when a margin goes negative.
    names : iterable of str, optional
        Restrict to a subset of invariants.
    progress : callable, optional
        Called with each finished :class:`InvariantResult`.
    """
    cfg.validate()
    wanted = set(names) if names is not None else None
    if wanted is not None:
        unknown = wanted - set(invariant_names())
        if unknown:
            raise ValueError(f"unknown invariants: {sorted(unknown)}")
    results = []
    for idx, inv in enumerate(INVARIANTS):
        if wanted is not None and inv.name not in wanted:
            continue
        trials = inv.trials if inv.trials is not None else cfg.samples
        worst = np.inf
        worst_inputs = None
        for t in range(trials):
            gen = SeededRng(
                seed=cfg.seed, stream_id=_SUITE_STREAM_BASE + (idx << 32) + t
            ).generator()
            inputs = inv.generate(gen)
            m = float(inv.margin(inputs))
            if m < worst:
                worst, worst_inputs = m, inputs
        passed = worst >= 0.0
        path = None
        if not passed and cfg.output_dir is not None:
            out = Path(cfg.output_dir)
            out.mkdir(parents=True, exist_ok=True)
            path = str(out / f"counterexample_{inv.name}.json")
            doc = {
                "invariant": inv.name,
                "margin": worst,
                "inputs": encode_inputs(worst_inputs),
            }
            Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8")
        result = InvariantResult(
            name=inv.name,
            trials=trials,
            worst_margin=float(worst),
            passed=passed,
            counterexample_path=path,
        )
        if progress is not None:
            progress(result)
        results.append(result)
    return SuiteReport(results=results)


def replay_counterexample(path) -> tuple[str, float, float]:
    """Recompute the margin of a dumped counterexample.

    Returns ``(invariant_name, stored_margin, recomputed_margin)``.
    Raises ``ValueError`` for malformed documents or inputs that fail
    validation.
    """
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ValueError(f"cannot read counterexample file {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"counterexample file {p} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "invariant" not in doc or "inputs" not in doc:
        raise ValueError(f"counterexample file {p} lacks required fields")
    name = doc["invariant"]
    matches = [inv for inv in INVARIANTS if inv.name == name]
    if not matches:
        raise ValueError(f"unknown invariant {name!r} in {p}")
    inputs = decode_inputs(doc["inputs"])
    margin = float(matches[0].margin(inputs))
    stored = float(doc.get("margin", np.nan))
    return name, stored, margin

"""The measure family: weighted sums, distances, phase minimization,
non-commutativity, and the equality constructions."""

import numpy as np
import pytest

import helpers
from unimet import (
    PhaseShiftMinimizer,
    SeededRng,
    adjoint,
    compose,
    construct_equality_pair,
    emetric,
    enorm,
    haar_unitary,
    group_commutator,
    identity,
    lambda_basis,
    minimal_rotation_unitary,
    nemetric,
    nenorm,
    noncommutativity,
    random_state,
    validate_unitary,
    weight_vector,
)


def diag_u(*phases):
    return validate_unitary(np.diag(np.exp(1j * np.asarray(phases, dtype=float))))


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

def test_lambda_basis_values():
    np.testing.assert_array_equal(lambda_basis(1, 3).weights, [1.0, 0.0, 0.0])
    np.testing.assert_array_equal(lambda_basis(3, 3).weights, [1.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        lambda_basis(0, 3)
    with pytest.raises(ValueError):
        lambda_basis(4, 3)


def test_weight_telescoping_reconstruction():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        mu = np.sort(rng.uniform(0.0, 3.0, size=n))[::-1]
        parts = np.zeros(n)
        for j in range(1, n):
            parts += (mu[j - 1] - mu[j]) * lambda_basis(j, n).weights
        parts += mu[-1] * lambda_basis(n, n).weights
        np.testing.assert_allclose(parts, mu, atol=1e-12)


def test_weight_vector_validation():
    wv = weight_vector([2.0, 1.0], n=2)
    np.testing.assert_array_equal(wv.weights, [2.0, 1.0])
    with pytest.raises(ValueError):
        weight_vector([1.0, 2.0])  # increasing
    with pytest.raises(ValueError):
        weight_vector([1.0, -0.5])  # negative
    with pytest.raises(ValueError):
        weight_vector([0.0, 0.0])  # all zero
    with pytest.raises(ValueError):
        weight_vector([1.0, 1.0, 1.0], n=2)  # length mismatch


# ---------------------------------------------------------------------------
# plain measure and distance
# ---------------------------------------------------------------------------

def test_enorm_worked_examples():
    u = diag_u(0.0, -np.pi / 2)
    assert enorm(u, [1.0, 1.0]) == pytest.approx(np.pi / 2, abs=1e-15)
    assert enorm(u, lambda_basis(1, 2)) == pytest.approx(np.pi / 2, abs=1e-15)
    assert enorm(identity(3), [1.0, 1.0, 1.0]) == 0.0
    minus = validate_unitary(-np.eye(3))
    assert enorm(minus, [2.0, 1.0, 0.5]) == pytest.approx(3.5 * np.pi, abs=1e-12)


def test_enorm_is_weighted_abs_phase_sum():
    rng = np.random.default_rng(21)
    for k in range(10):
        n = int(rng.integers(2, 6))
        u = haar_unitary(n, SeededRng(600, k))
        mu = np.sort(rng.uniform(0.0, 2.0, size=n))[::-1]
        want = float(np.dot(mu, np.sort(np.abs(u.spectrum.phases))[::-1]))
        assert enorm(u, mu) == pytest.approx(want, abs=1e-12)


def test_emetric_worked_examples():
    u = haar_unitary(3, SeededRng(601))
    assert emetric(u, u, [1.0, 1.0, 0.0]) <= 1e-12
    minus = validate_unitary(-u.matrix)
    assert emetric(u, minus, [1.0, 1.0, 0.0]) == pytest.approx(2 * np.pi, abs=1e-9)
    v = haar_unitary(3, SeededRng(602))
    want = enorm(compose(u, adjoint(v)), [2.0, 1.0, 0.0])
    assert emetric(u, v, [2.0, 1.0, 0.0]) == pytest.approx(want, abs=1e-10)


# ---------------------------------------------------------------------------
# phase-minimized measure
# ---------------------------------------------------------------------------

def test_nenorm_worked_example():
    res = nenorm(diag_u(0.0, -np.pi / 2), lambda_basis(1, 2))
    assert res.value == pytest.approx(np.pi / 4, abs=1e-12)
    assert res.argmin_x == pytest.approx(np.pi / 4, abs=1e-12)
    assert res.candidates_evaluated > 0


def test_nenorm_gauge_family_is_zero():
    for x in (0.0, 0.4, np.pi, 5.0):
        u = validate_unitary(np.exp(1j * x) * np.eye(3))
        assert nenorm(u, [1.0, 1.0, 1.0]).value <= 1e-12


def test_nenorm_value_matches_objective_at_argmin():
    rng = np.random.default_rng(31)
    for k in range(12):
        n = int(rng.integers(2, 6))
        u = haar_unitary(n, SeededRng(603, k))
        mu = np.sort(rng.uniform(0.0, 2.0, size=n))[::-1]
        res = nenorm(u, mu)
        direct = helpers.weighted_phase_sum(u.spectrum.phases, mu, res.argmin_x)
        assert res.value == pytest.approx(direct, abs=1e-10)
        assert 0.0 <= res.argmin_x < 2 * np.pi
        assert res.value <= enorm(u, mu) + 1e-12


def test_nenorm_matches_dense_grid():
    rng = np.random.default_rng(41)
    for k in range(6):
        n = int(rng.integers(2, 6))
        u = haar_unitary(n, SeededRng(604, k))
        mu = np.sort(rng.uniform(0.0, 2.0, size=n))[::-1]
        exact = nenorm(u, mu).value
        grid = helpers.grid_nenorm(u.spectrum.phases, mu, points=200_000)
        assert exact <= grid + 1e-12
        assert grid - exact <= (2 * np.pi / 200_000) * mu.sum()


def test_nenorm_argmin_tie_breaks_smallest():
    # diag(1, 1, -1, -1): the full-weight objective is constant, so every
    # candidate minimizes and the reported argmin must be the smallest one
    u = diag_u(0.0, 0.0, np.pi, np.pi)
    res = nenorm(u, lambda_basis(4, 4))
    assert res.value == pytest.approx(2 * np.pi, abs=1e-12)
    assert res.argmin_x == 0.0


def test_minimizer_serves_multiple_weights():
    u = haar_unitary(5, SeededRng(605))
    mini = PhaseShiftMinimizer(u.spectrum.phases)
    for m in range(1, 6):
        mu = lambda_basis(m, 5)
        assert mini.minimize(mu).value == pytest.approx(
            nenorm(u, mu).value, abs=1e-12
        )


def test_nenorm_doubling_and_odd_top_collapse():
    # exact degeneracies of the ones-prefix ladder: m = 2 doubles m = 1 in
    # every dimension; the full weight collapses onto drop-one when n is odd
    for n, seed in ((2, 0), (3, 1), (4, 2), (5, 3), (6, 4)):
        u = haar_unitary(n, SeededRng(606, seed))
        mini = PhaseShiftMinimizer(u.spectrum.phases)
        v1 = mini.minimize(lambda_basis(1, n)).value
        v2 = mini.minimize(lambda_basis(2, n)).value
        assert abs(v2 - 2.0 * v1) <= 1e-9
        if n % 2 == 1:
            vn = mini.minimize(lambda_basis(n, n)).value
            vm = mini.minimize(lambda_basis(n - 1, n)).value
            assert abs(vn - vm) <= 1e-9


def test_interior_odd_prefix_does_not_collapse():
    # diag(1, 1, -1, -1) has minimized values exactly m*pi/2, so the m = 3
    # value sits strictly between the m = 2 and m = 4 values
    u = diag_u(0.0, 0.0, np.pi, np.pi)
    mini = PhaseShiftMinimizer(u.spectrum.phases)
    values = [mini.minimize(lambda_basis(m, 4)).value for m in (1, 2, 3, 4)]
    np.testing.assert_allclose(values, np.arange(1, 5) * np.pi / 2, atol=1e-12)


def test_nemetric_gauge_and_symmetry():
    u = haar_unitary(3, SeededRng(607))
    shifted = validate_unitary(np.exp(0.9j) * u.matrix)
    assert nemetric(u, shifted, [1.0, 1.0, 0.0]) <= 1e-10
    assert nemetric(identity(2), validate_unitary(-np.eye(2)), [1.0, 1.0]) <= 1e-10
    v = haar_unitary(3, SeededRng(608))
    d_uv = nemetric(u, v, [1.0, 1.0, 1.0])
    d_vu = nemetric(v, u, [1.0, 1.0, 1.0])
    assert d_uv == pytest.approx(d_vu, abs=1e-9)


# ---------------------------------------------------------------------------
# non-commutativity
# ---------------------------------------------------------------------------

def test_commuting_pairs_have_zero_cost():
    u = diag_u(0.3, -1.2, 2.0)
    v = diag_u(1.0, 0.5, -0.7)
    assert noncommutativity(u, v, [1.0, 1.0, 1.0]) <= 1e-12


def test_pauli_pairs_saturate():
    sx = validate_unitary(helpers.PAULI_X)
    sy = validate_unitary(helpers.PAULI_Y)
    sz = validate_unitary(helpers.PAULI_Z)
    rng = np.random.default_rng(51)
    for _ in range(5):
        mu = np.sort(rng.uniform(0.1, 2.0, size=2))[::-1]
        top = np.pi * mu.sum()
        for a, b in ((sx, sy), (sy, sz), (sz, sx)):
            assert noncommutativity(a, b, mu) == pytest.approx(top, abs=1e-9)


def test_group_commutator_definition():
    u = haar_unitary(3, SeededRng(609, 0))
    v = haar_unitary(3, SeededRng(609, 1))
    direct = u.matrix @ v.matrix @ u.matrix.conj().T @ v.matrix.conj().T
    np.testing.assert_allclose(group_commutator(u, v).matrix, direct, atol=1e-12)
    want = enorm(validate_unitary(direct, tau=1e-8), [1.0, 0.5, 0.0])
    assert noncommutativity(u, v, [1.0, 0.5, 0.0]) == pytest.approx(want, abs=1e-10)


def test_noncommutativity_conjugation_invariant():
    u = haar_unitary(3, SeededRng(610, 0))
    v = haar_unitary(3, SeededRng(610, 1))
    w = haar_unitary(3, SeededRng(610, 2)).matrix
    cu = validate_unitary(w @ u.matrix @ w.conj().T, tau=1e-8)
    cv = validate_unitary(w @ v.matrix @ w.conj().T, tau=1e-8)
    a = noncommutativity(u, v, [1.0, 1.0, 0.0])
    b = noncommutativity(cu, cv, [1.0, 1.0, 0.0])
    assert a == pytest.approx(b, abs=1e-9)


# ---------------------------------------------------------------------------
# equality constructions
# ---------------------------------------------------------------------------

def test_equality_pair_worked_arithmetic():
    u = diag_u(np.pi / 2, np.pi / 4)
    v = diag_u(np.pi / 3, np.pi / 6)
    mu = [1.0, 1.0]
    total = enorm(compose(u, v), mu)
    assert total == pytest.approx(5 * np.pi / 6 + 5 * np.pi / 12, abs=1e-12)
    assert total == pytest.approx(enorm(u, mu) + enorm(v, mu), abs=1e-12)


def test_construct_equality_pair_structure_and_additivity():
    for n, seed in ((1, 0), (2, 7), (3, 8), (4, 9), (5, 10)):
        u, v = construct_equality_pair(n, seed)
        # simultaneous diagonal pair with nonnegative phases summing below pi
        assert np.count_nonzero(u.matrix - np.diag(np.diagonal(u.matrix))) == 0
        assert np.count_nonzero(v.matrix - np.diag(np.diagonal(v.matrix))) == 0
        tu = np.angle(np.diagonal(u.matrix))
        tv = np.angle(np.diagonal(v.matrix))
        assert np.all(tu >= -1e-15) and np.all(tv >= -1e-15)
        assert np.all(tu[:-1] >= tu[1:] - 1e-15)
        assert np.all(tv[:-1] >= tv[1:] - 1e-15)
        assert np.all(tu + tv <= np.pi + 1e-12)
        for m in range(1, n + 1):
            mu = lambda_basis(m, n)
            lhs = enorm(compose(u, v), mu)
            rhs = enorm(u, mu) + enorm(v, mu)
            assert abs(lhs - rhs) <= 1e-10
        # seeded construction must be reproducible
        u2, v2 = construct_equality_pair(n, seed)
        assert np.array_equal(u.matrix, u2.matrix)
        assert np.array_equal(v.matrix, v2.matrix)


def test_minimal_rotation_basis_vectors():
    u = minimal_rotation_unitary([1.0, 0.0], [0.0, 1.0])
    assert helpers.circular_match_gap(
        u.spectrum.phases, [np.pi / 2, -np.pi / 2]
    ) <= 1e-8
    out = u.matrix @ np.array([1.0, 0.0])
    overlap = np.vdot(np.array([0.0, 1.0]), out)
    assert abs(abs(overlap) - 1.0) <= 1e-12
    assert overlap.real > 0  # aligned, not merely proportional


def test_minimal_rotation_identical_states():
    psi = random_state(3, SeededRng(611))
    np.testing.assert_allclose(
        minimal_rotation_unitary(psi, psi).matrix, np.eye(3), atol=1e-12
    )


def test_minimal_rotation_random_pair():
    psi1 = random_state(4, SeededRng(612, 0))
    psi2 = random_state(4, SeededRng(612, 1))
    u = minimal_rotation_unitary(psi1, psi2)
    chi = np.arccos(min(1.0, abs(np.vdot(psi1, psi2))))
    assert helpers.circular_match_gap(
        u.spectrum.phases, [chi, 0.0, 0.0, -chi]
    ) <= 1e-8
    out = u.matrix @ psi1
    delta = np.angle(np.vdot(psi2, out))
    assert np.linalg.norm(out - np.exp(1j * delta) * psi2) <= 1e-8


def test_dimension_mismatch_errors():
    u = haar_unitary(2, SeededRng(613))
    v = haar_unitary(3, SeededRng(614))
    with pytest.raises(ValueError):
        enorm(u, [1.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        emetric(u, v, [1.0, 1.0])
    with pytest.raises(ValueError):
        noncommutativity(u, v, [1.0, 1.0])

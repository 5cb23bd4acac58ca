"""Distributional and determinism checks for the random samplers."""

import numpy as np
from scipy import stats

from unimet import (
    SeededRng,
    ginibre,
    haar_unitary,
    random_hermitian,
    random_state,
    validate_unitary,
)


def test_stream_determinism():
    a = SeededRng(5, 3).generator().uniform(size=8)
    b = SeededRng(5, 3).generator().uniform(size=8)
    c = SeededRng(5, 4).generator().uniform(size=8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    # stream() is just a convenience re-address of the same seed
    d = SeededRng(5).stream(3).generator().uniform(size=8)
    assert np.array_equal(a, d)


def test_haar_unitary_deterministic_and_seed_sensitive():
    u = haar_unitary(4, SeededRng(9, 1))
    v = haar_unitary(4, SeededRng(9, 1))
    w = haar_unitary(4, SeededRng(10, 1))
    assert np.array_equal(u.matrix, v.matrix)
    assert not np.array_equal(u.matrix, w.matrix)


def test_haar_unitarity_defect():
    for n in range(1, 9):
        assert haar_unitary(n, SeededRng(77, n)).unitarity_defect <= 1e-12


def test_haar_phase_uniformity_chisq():
    # n = 1: the single eigenphase must be uniform on (-pi, pi]
    phases = np.array(
        [haar_unitary(1, SeededRng(321, k)).spectrum.phases[0] for k in range(4000)]
    )
    counts, _ = np.histogram(phases, bins=16, range=(-np.pi, np.pi))
    p = stats.chisquare(counts).pvalue
    assert p > 1e-3


def test_haar_trace_second_moment():
    # E |tr U|^2 = 1 for the translation-invariant distribution on U(n)
    for seed in (100, 200):
        vals = [
            abs(np.trace(haar_unitary(3, SeededRng(seed, k)).matrix)) ** 2
            for k in range(4000)
        ]
        assert abs(np.mean(vals) - 1.0) < 0.1


def test_haar_left_invariance_ks():
    fixed = haar_unitary(3, SeededRng(999)).matrix
    top_plain, top_shifted = [], []
    for k in range(600):
        u = haar_unitary(3, SeededRng(555, k))
        top_plain.append(u.spectrum.abs_phases_desc[0])
        top_shifted.append(
            validate_unitary(fixed @ u.matrix).spectrum.abs_phases_desc[0]
        )
    p = stats.ks_2samp(top_plain, top_shifted).pvalue
    assert p > 1e-3


def test_ginibre_moments():
    g = ginibre(40, SeededRng(42).generator())
    assert g.shape == (40, 40)
    # entries are standard complex normals: each part has variance 1/2
    assert abs(g.real.mean()) < 0.05
    assert abs(g.imag.mean()) < 0.05
    assert abs(g.real.var() - 0.5) < 0.05
    assert abs(g.imag.var() - 0.5) < 0.05


def test_random_state_unit_norm_and_deterministic():
    psi = random_state(6, SeededRng(8, 2))
    phi = random_state(6, SeededRng(8, 2))
    assert abs(np.linalg.norm(psi) - 1.0) <= 1e-12
    assert np.array_equal(psi, phi)


def test_random_hermitian_matches_eigh_oracle():
    h = random_hermitian(5, SeededRng(31))
    assert h.hermiticity_defect <= 1e-12
    np.testing.assert_allclose(
        h.eigenvalues, np.linalg.eigvalsh(h.matrix), atol=1e-10
    )
    assert np.all(np.imag(h.eigenvalues) == 0)

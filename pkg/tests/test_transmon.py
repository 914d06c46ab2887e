import math

import numpy as np
import pytest
from scipy import constants as sc
from scipy.special import mathieu_a, mathieu_b

from wqed.errors import ParameterError, TruncationError
from wqed.transmon import (build_charge_hamiltonian, charge_dispersion, default_cutoff,
                           diagonal_charge_from_slope, diagonalize, min_cutoff, solve_transmon,
                           spectrum_slope, spectrum_vs_ng)

HBAR = sc.hbar


def test_hamiltonian_hermitian_and_shape(transmon50):
    EC, EJ = transmon50
    H, X = build_charge_hamiltonian(EC, EJ, 0.3, 15)
    assert H.shape == (31, 31)
    assert np.array_equal(H, H.conj().T)
    assert np.allclose(np.diag(X).real, 2 * sc.e * (np.arange(-15, 16) - 0.3))


def test_cutoff_rule(transmon50):
    EC, EJ = transmon50
    assert min_cutoff(EC, EJ) == 4 + math.ceil(math.sqrt(50))
    assert default_cutoff(EC, EJ) == max(10, min_cutoff(EC, EJ) + 5)
    with pytest.raises(TruncationError):
        build_charge_hamiltonian(EC, EJ, 0.0, min_cutoff(EC, EJ) - 1)


def test_free_charges():
    EC = sc.h * 1e9
    ng = 0.2
    H, X = build_charge_hamiltonian(EC, 0.0, ng, 10)
    m = np.arange(-10, 11)
    assert np.allclose(np.sort(np.linalg.eigvalsh(H)), np.sort(4 * EC * (m - ng) ** 2))


def test_levels_match_mathieu_oracle(transmon50):
    EC, EJ = transmon50
    spec = solve_transmon(EC, EJ, 0.0, nLevels=3)
    q = -EJ / (2 * EC)
    E = np.array([mathieu_a(0, q), mathieu_b(2, q), mathieu_a(2, q)]) * EC
    assert np.allclose(spec.energies, E, rtol=1e-9)


def test_plasma_frequency(transmon50):
    EC, EJ = transmon50
    spec = solve_transmon(EC, EJ)
    ratio = HBAR * spec.omegas[1] / (math.sqrt(8 * EJ * EC) - EC)
    assert abs(ratio - 1) < 0.03


def test_anharmonicity_value(transmon50):
    # exact value at EJ/EC = 50 (frozen from the Mathieu characteristic values)
    EC, EJ = transmon50
    spec = solve_transmon(EC, EJ)
    alpha = HBAR * (spec.transition(2, 1) - spec.transition(1, 0)) / EC
    assert alpha == pytest.approx(-1.1492, abs=5e-4)


def test_anharmonicity_tends_to_minus_ec():
    EC = sc.h * 250e6
    devs = []
    for r in (50, 200, 800):
        spec = solve_transmon(EC, r * EC)
        devs.append(abs(HBAR * (spec.transition(2, 1) - spec.transition(1, 0)) / EC + 1))
    assert devs[0] > devs[1] > devs[2]


def test_charge_matrix_elements(transmon50):
    EC, EJ = transmon50
    X = solve_transmon(EC, EJ, nLevels=4).chargeME
    assert np.array_equal(X, X.conj().T)
    assert np.all(np.abs(np.diag(X).imag) == 0)
    r = abs(X[2, 1]) / abs(X[1, 0])
    assert abs(r / math.sqrt(2) - 1) < 0.05
    assert abs(X[2, 0]) / abs(X[1, 0]) < 0.1


def test_phase_convention_deterministic(transmon50):
    EC, EJ = transmon50
    H, X = build_charge_hamiltonian(EC, EJ, 0.17, 20)
    a = diagonalize(H, X, 3)
    b = diagonalize(H * (1 + 0j), X, 3)
    assert np.array_equal(a.chargeME, b.chargeME)


def test_cutoff_convergence(transmon50):
    EC, EJ = transmon50
    n0 = default_cutoff(EC, EJ)
    a = solve_transmon(EC, EJ, 0.1, 4, n0).energies
    b = solve_transmon(EC, EJ, 0.1, 4, n0 + 5).energies
    assert np.max(np.abs(a - b) / np.abs(b)) < 1e-10


def test_cutoff_convergence_large_ratio():
    EC = sc.h * 200e6
    EJ = 400 * EC
    n0 = default_cutoff(EC, EJ)
    a = solve_transmon(EC, EJ, 0.1, 4, n0).energies
    b = solve_transmon(EC, EJ, 0.1, 4, n0 + 5).energies
    assert np.max(np.abs(a - b) / np.abs(b)) < 1e-10


def test_omegas_increasing(transmon50):
    EC, EJ = transmon50
    w = solve_transmon(EC, EJ, 0.3, nLevels=5).omegas
    assert w[0] == 0 and np.all(np.diff(w) > 0)


def test_nlevels_too_large():
    EC = sc.h * 1e9
    H, X = build_charge_hamiltonian(EC, 10 * EC, 0.0, 10)
    with pytest.raises(ParameterError):
        diagonalize(H, X, 30)


def test_non_hermitian_rejected():
    H = np.array([[0, 1], [2, 0]], dtype=complex)
    with pytest.raises(ParameterError):
        diagonalize(H, np.eye(2), 2)


def _exact_dispersion(EC, EJ, k):
    lo = solve_transmon(EC, EJ, 0.0, k + 1).energies[k]
    hi = solve_transmon(EC, EJ, 0.5, k + 1).energies[k]
    return hi - lo


def test_dispersion_sign():
    EC = sc.h * 250e6
    for k in range(4):
        assert np.sign(charge_dispersion(EC, 50 * EC, k)) == (-1) ** k


def test_dispersion_vs_exact(transmon50):
    EC, EJ = transmon50
    exact = abs(_exact_dispersion(EC, EJ, 0))
    assert abs(abs(charge_dispersion(EC, EJ, 0)) / exact - 1) < 0.2


def test_dispersion_ratio(transmon50):
    EC, EJ = transmon50
    r = charge_dispersion(EC, EJ, 1) / charge_dispersion(EC, EJ, 0)
    assert r == pytest.approx(-16 * math.sqrt(EJ / (2 * EC)), rel=1e-14)


def test_cosine_model():
    w4, eps = 3.0e10, sc.h * 1e5
    assert spectrum_vs_ng(w4, eps, 0.25) == pytest.approx(w4, rel=1e-15)
    diff = spectrum_vs_ng(w4, eps, 0.5) - spectrum_vs_ng(w4, eps, 0.0)
    assert diff == pytest.approx(eps / HBAR, rel=1e-9)
    assert abs(spectrum_slope(eps, 0.25)) == pytest.approx(math.pi * eps / HBAR)


def test_diagonal_charge_at_quarter(transmon50):
    EC, EJ = transmon50
    eps = charge_dispersion(EC, EJ, 1)
    x = diagonal_charge_from_slope(EC, eps, 0.25)
    assert x == pytest.approx(sc.e / (4 * EC) * math.pi * abs(eps), rel=1e-12)

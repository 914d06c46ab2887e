import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import adjoint_g2
from wqed import operators as ops
from wqed.errors import (AmbiguousSteadyStateError, ParameterError, ZeroOccupationError)
from wqed.liouville import (build_liouvillian, check_density_matrix, commutator_left,
                            commutator_right, dissipator, propagate, propagator, sandwich_terms,
                            spost, spre, steady_state, trace_defect, two_time_g2, unvec, vec)

rng = np.random.default_rng(20240611)


def rand_op(n, rng=rng):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def rand_herm(n, rng=rng):
    A = rand_op(n, rng)
    return 0.5 * (A + A.conj().T)


def rand_rho(n, rng=rng):
    A = rand_op(n, rng)
    rho = A @ A.conj().T
    return rho / np.trace(rho)


def apply(S, rho):
    return unvec(S @ vec(rho), rho.shape[0])


def driven_qubit(G=1.0, W=0.7, D=0.3, G01=0.0):
    H = -D * ops.projector(2, 1) + 0.5 * W * ops.sigma_x()
    return H, [(G, ops.sigma_minus()), (G01, ops.sigma_plus())]


def test_vec_is_column_stacking():
    A = np.arange(4).reshape(2, 2)
    assert list(vec(A)) == [0, 2, 1, 3]
    assert np.array_equal(unvec(vec(A)), A)


def test_sandwich_identity():
    assert np.array_equal(sandwich_terms(np.eye(3), np.eye(3)), np.eye(9))


def test_sandwich_composition():
    A, B, C, D = (rand_op(3) for _ in range(4))
    lhs = sandwich_terms(C, D) @ sandwich_terms(A, B)
    assert np.allclose(lhs, sandwich_terms(C @ A, B @ D), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1), st.integers(min_value=1, max_value=5))
def test_sandwich_matches_direct_products(seed, n):
    r = np.random.default_rng(seed)
    A, B, rho = rand_op(n, r), rand_op(n, r), rand_op(n, r)
    assert np.allclose(apply(sandwich_terms(A, B), rho), A @ rho @ B, atol=1e-12, rtol=0)
    assert np.allclose(apply(spre(A), rho), A @ rho, atol=1e-12, rtol=0)
    assert np.allclose(apply(spost(B), rho), rho @ B, atol=1e-12, rtol=0)
    assert np.allclose(apply(commutator_left(A, B), rho), A @ rho @ B - rho @ B @ A, atol=1e-11)
    assert np.allclose(apply(commutator_right(A, B), rho), A @ rho @ B - B @ A @ rho, atol=1e-11)


def test_dimension_mismatch():
    with pytest.raises(ParameterError):
        sandwich_terms(np.eye(2), np.eye(3))
    with pytest.raises(ParameterError):
        dissipator(np.ones((2, 3)))


def test_dissipator_identity_is_zero():
    assert np.allclose(dissipator(np.eye(4)), 0)


def test_dissipator_decay_shape():
    out = apply(dissipator(ops.sigma_minus()), ops.projector(2, 1))
    assert np.allclose(out, np.diag([1.0, -1.0]))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1), st.integers(min_value=2, max_value=6))
def test_random_generator_trace_preserving(seed, n):
    r = np.random.default_rng(seed)
    L = build_liouvillian(rand_herm(n, r), [(abs(r.normal()), rand_op(n, r)) for _ in range(3)])
    assert trace_defect(L) <= 1e-10 * max(1.0, np.abs(L).max())


def test_liouvillian_matches_term_by_term():
    n = 3
    H, c = rand_herm(n), rand_op(n)
    L = build_liouvillian(H, [(0.7, c)])
    rho = rand_rho(n)
    cd = c.conj().T
    direct = -1j * (H @ rho - rho @ H) + 0.7 * (c @ rho @ cd - 0.5 * (cd @ c @ rho + rho @ cd @ c))
    assert np.allclose(apply(L, rho), direct, atol=1e-12)


def test_non_hermitian_h_rejected():
    with pytest.raises(ParameterError):
        build_liouvillian(rand_op(2))


def test_negative_rate_rejected():
    with pytest.raises(ParameterError):
        build_liouvillian(np.zeros((2, 2)), [(-1.0, ops.sigma_minus())])


def test_ground_state_fixed_point():
    L = build_liouvillian(np.zeros((2, 2)), [(1.0, ops.sigma_minus())])
    rho = steady_state(L)
    assert np.allclose(rho, ops.projector(2, 0), atol=1e-10)


def test_thermal_population_ratio():
    n = 0.3
    L = build_liouvillian(np.zeros((2, 2)), [(1 + n, ops.sigma_minus()), (n, ops.sigma_plus())])
    rho = steady_state(L)
    assert rho[1, 1].real / rho[0, 0].real == pytest.approx(n / (1 + n), rel=1e-12)


def test_steady_state_residual_and_validity():
    H, terms = driven_qubit()
    L = build_liouvillian(H, terms)
    rho = steady_state(L)
    assert np.abs(L @ vec(rho)).max() <= 1e-10 * np.abs(L).sum(axis=0).max()
    check_density_matrix(rho)


def test_degenerate_kernel_rejected():
    with pytest.raises(AmbiguousSteadyStateError):
        steady_state(build_liouvillian(ops.sigma_z()))


def test_driven_resonant_reflection():
    # r0 = 1, Nin/gamma10 = 0.1 gives r = -1/1.2
    G = 1.0
    g = G / 2
    Nin = 0.1 * g
    W = np.sqrt(2 * G * Nin)
    L = build_liouvillian(0.5 * W * ops.sigma_x(), [(G, ops.sigma_minus())])
    rho = steady_state(L)
    r = 1j * G * rho[0, 1] / W
    assert r == pytest.approx(-1 / 1.2, abs=1e-12)


def test_eigenoperator_decomposition():
    w, x10 = 3.7, 0.4
    H = w * ops.projector(2, 1)
    Xp = 1j * x10 * ops.sigma_plus()
    Xm = -1j * x10 * ops.sigma_minus()
    assert np.allclose(H @ Xp - Xp @ H, w * Xp)
    assert np.allclose(H @ Xm - Xm @ H, -w * Xm)


def test_propagator_identity_and_semigroup():
    H, terms = driven_qubit()
    L = build_liouvillian(H, terms)
    assert np.array_equal(propagator(L, 0.0), np.eye(4))
    P = propagator(L, 0.9) @ propagator(L, 0.4)
    assert np.abs(P - propagator(L, 1.3)).max() < 1e-8
    rho = steady_state(L)
    assert np.abs(apply(propagator(L, 2.5), rho) - rho).max() < 1e-8


def test_propagate_free_decay():
    G = 2.0
    L = build_liouvillian(np.zeros((2, 2)), [(G, ops.sigma_minus())])
    rho0 = ops.projector(2, 1)
    assert np.array_equal(propagate(L, rho0, 0.0), rho0)
    for t in (0.1, 0.5, 2.0):
        assert propagate(L, rho0, t)[1, 1].real == pytest.approx(np.exp(-G * t), abs=1e-8)


def test_propagate_long_time_and_large_norm_path():
    H, terms = driven_qubit()
    L = build_liouvillian(H, terms)
    rho_s = steady_state(L)
    rho0 = ops.projector(2, 1).astype(complex)
    t = 40.0
    a = propagate(L, rho0, t)
    b = propagate(L, rho0, t, threshold=1.0)  # forces the Krylov path
    assert np.abs(a - rho_s).max() < 1e-6
    assert np.abs(a - b).max() < 1e-8


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2**31 - 1), st.floats(min_value=0.01, max_value=5.0))
def test_propagate_preserves_state_properties(seed, t):
    r = np.random.default_rng(seed)
    L = build_liouvillian(rand_herm(3, r), [(abs(r.normal()), rand_op(3, r))])
    check_density_matrix(propagate(L, rand_rho(3, r), t), tol=1e-8)


def test_negative_time_rejected():
    L = build_liouvillian(np.zeros((2, 2)))
    with pytest.raises(ParameterError):
        propagator(L, -1.0)
    with pytest.raises(ParameterError):
        propagate(L, np.eye(2) / 2, -1.0)


def test_g2_two_level_limits():
    H, terms = driven_qubit(W=0.5, D=0.0)
    L = build_liouvillian(H, terms)
    curve = two_time_g2(L, ops.sigma_minus(), np.linspace(0, 60, 301))
    assert abs(curve.values[0]) <= 1e-8
    assert curve.values[-1] == pytest.approx(1.0, abs=1e-3)
    assert np.all(curve.values >= -1e-12)


def test_g2_zero_flux():
    L = build_liouvillian(np.zeros((2, 2)), [(1.0, ops.sigma_minus())])
    with pytest.raises(ZeroOccupationError):
        two_time_g2(L, ops.sigma_minus(), [0.0, 1.0])


@pytest.mark.parametrize("W, D, n", [(0.5, 0.0, 0.0), (2.0, 0.7, 0.0), (1.0, -0.4, 0.2)])
def test_g2_propagator_matches_adjoint(W, D, n):
    H, _ = driven_qubit(W=W, D=D)
    terms = [(1 + n, ops.sigma_minus()), (n, ops.sigma_plus()), (0.3, ops.sigma_z())]
    taus = np.linspace(0, 10, 81)
    curve = two_time_g2(build_liouvillian(H, terms), ops.sigma_minus(), taus)
    ref = adjoint_g2(H, terms, ops.sigma_minus(), taus)
    assert np.abs(curve.values - ref).max() < 1e-8


def test_g2_grid_validation():
    H, terms = driven_qubit()
    L = build_liouvillian(H, terms)
    with pytest.raises(ParameterError):
        two_time_g2(L, ops.sigma_minus(), [1.0, 0.5])
    with pytest.raises(ParameterError):
        two_time_g2(L, ops.sigma_minus(), [])

"""Superoperator algebra for Lindblad master equations.

Density matrices are vectorised by stacking columns (Fortran order), so that
vec(A rho B) = (B^T kron A) vec(rho). Every constructor below follows this
convention. Hamiltonians are passed in angular-frequency units (H / hbar).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import expm_multiply

from .errors import (AmbiguousSteadyStateError, NumericalError, ParameterError,
                     ZeroOccupationError)

#: ||L|| t above which propagate() switches to the adaptive action-of-exponential path
EXPM_THRESHOLD = 1e3


@dataclass(frozen=True)
class G2Curve:
    taus: np.ndarray
    values: np.ndarray


def vec(rho):
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v, dim=None):
    v = np.asarray(v)
    if dim is None:
        dim = int(round(np.sqrt(v.size)))
    return v.reshape((dim, dim), order="F")


def _square(op, name="operator"):
    op = np.asarray(op, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ParameterError(f"{name} must be a square matrix, got shape {op.shape}")
    return op


def sandwich_terms(A, B):
    """Superoperator of rho -> A rho B."""
    A = _square(A, "A")
    B = _square(B, "B")
    if A.shape != B.shape:
        raise ParameterError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return np.kron(B.T, A)


def spre(A):
    """rho -> A rho"""
    A = _square(A)
    return np.kron(np.eye(A.shape[0]), A)


def spost(B):
    """rho -> rho B"""
    B = _square(B)
    return np.kron(B.T, np.eye(B.shape[0]))


def commutator_left(A, B):
    """rho -> [A, rho B]; used for the cascaded cross terms."""
    A = _square(A)
    return sandwich_terms(A, B) - spost(B @ A)


def commutator_right(A, B):
    """rho -> [A rho, B]"""
    B = _square(B)
    return sandwich_terms(A, B) - spre(B @ A)


def dissipator(c):
    """D(c) rho = c rho c^dag - (c^dag c rho + rho c^dag c) / 2."""
    c = _square(c, "collapse operator")
    cd = c.conj().T
    cdc = cd @ c
    return sandwich_terms(c, cd) - 0.5 * (spre(cdc) + spost(cdc))


def hamiltonian_part(H):
    """-i [H, rho] with H in rad/s."""
    H = _square(H, "Hamiltonian")
    return -1j * (spre(H) - spost(H))


def build_liouvillian(H, terms=(), extra=()):
    """L rho = -i [H, rho] + sum rate D(c) rho + sum extra rho.

    Parameters
    ----------
    H : (d, d) array
        Hermitian Hamiltonian in rad/s.
    terms : iterable of (rate, c)
        Lindblad channels; rates in rad/s and non-negative.
    extra : iterable of (d^2, d^2) arrays
        Additional superoperators added verbatim.
    """
    H = _square(H, "Hamiltonian")
    scale = max(np.abs(H).max(), 1.0)
    if not np.allclose(H, H.conj().T, rtol=0, atol=1e-12 * scale):
        raise ParameterError("Hamiltonian is not Hermitian")
    L = hamiltonian_part(H)
    for rate, c in terms:
        if rate < 0:
            raise ParameterError(f"negative Lindblad rate {rate!r}")
        if rate:
            c = _square(c, "collapse operator")
            if c.shape != H.shape:
                raise ParameterError(f"collapse operator shape {c.shape} != {H.shape}")
            L = L + rate * dissipator(c)
    for sup in extra:
        sup = np.asarray(sup)
        if sup.shape != L.shape:
            raise ParameterError(f"superoperator shape {sup.shape} != {L.shape}")
        L = L + sup
    return L


def trace_row(dim):
    """Row functional with trace_row(d) @ vec(rho) = Tr rho."""
    return vec(np.eye(dim)).astype(complex)


def trace_defect(L):
    """max |Tr L(rho)| over unit basis inputs; zero for trace-preserving L."""
    dim = int(round(np.sqrt(L.shape[0])))
    return float(np.abs(trace_row(dim) @ L).max())


def steady_state(L, check_kernel=True, kernel_tol=1e-10):
    """Stationary density matrix of the generator ``L``.

    One row of L is replaced by the trace functional and the bordered system
    is solved directly. With ``check_kernel`` the null space of L is checked
    to be one-dimensional first.
    """
    L = np.asarray(L, dtype=complex)
    n = L.shape[0]
    dim = int(round(np.sqrt(n)))
    if dim * dim != n:
        raise ParameterError("generator size is not a perfect square")
    norm = np.abs(L).sum(axis=0).max()
    if check_kernel:
        sv = linalg.svdvals(L)
        null = int(np.sum(sv <= kernel_tol * sv[0]))
        if null > 1:
            raise AmbiguousSteadyStateError(f"generator kernel has dimension {null}")
        if null == 0 and sv[-1] > 1e-6 * sv[0]:
            raise NumericalError(
                f"generator has no stationary state (smallest singular value {sv[-1]:.3g})"
            )
    M = L.copy()
    M[0, :] = trace_row(dim)
    b = np.zeros(n, dtype=complex)
    b[0] = 1.0
    try:
        x = linalg.solve(M, b)
    except linalg.LinAlgError as exc:
        raise NumericalError(f"bordered steady-state system is singular: {exc}") from exc
    rho = unvec(x, dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real
    resid = np.abs(L @ vec(rho)).max()
    if resid > 1e-8 * norm:
        raise NumericalError(f"steady-state residual {resid:.3g} exceeds 1e-8 ||L||")
    return rho


def check_density_matrix(rho, tol=1e-10, pos_tol=1e-8):
    """Raise NumericalError unless ``rho`` is Hermitian, unit-trace and positive."""
    rho = np.asarray(rho)
    herm = np.abs(rho - rho.conj().T).max()
    tr = abs(np.trace(rho) - 1.0)
    low = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
    if herm > tol or tr > tol or low < -pos_tol:
        raise NumericalError(
            f"invalid density matrix: hermiticity {herm:.2e}, trace error {tr:.2e}, "
            f"min eigenvalue {low:.2e}"
        )
    return rho


def propagator(L, tau):
    """exp(L tau) as an explicit matrix (scaling and squaring)."""
    if tau < 0:
        raise ParameterError("tau must be non-negative")
    L = np.asarray(L, dtype=complex)
    if tau == 0:
        return np.eye(L.shape[0], dtype=complex)
    P = linalg.expm(L * tau)
    if not np.all(np.isfinite(P)):
        raise NumericalError(f"matrix exponential overflowed at tau={tau:.3g}")
    return P


def propagate(L, rho0, t, threshold=EXPM_THRESHOLD):
    """Density matrix at time ``t`` starting from ``rho0``."""
    if t < 0:
        raise ParameterError("t must be non-negative")
    rho0 = np.asarray(rho0, dtype=complex)
    if t == 0:
        return rho0.copy()
    L = np.asarray(L, dtype=complex)
    v0 = vec(rho0)
    scale = np.abs(L).sum(axis=0).max() * t
    if scale <= threshold:
        v = propagator(L, t) @ v0
    else:
        try:
            v = expm_multiply(L * t, v0)
        except Exception as exc:  # noqa: BLE001 - surface any stepping failure uniformly
            raise NumericalError(
                f"adaptive propagation failed at t={t:.3g} (||L|| t = {scale:.3g}): {exc}"
            ) from exc
    if not np.all(np.isfinite(v)):
        raise NumericalError(f"propagation produced non-finite values (||L|| t = {scale:.3g})")
    return unvec(v, rho0.shape[0])


def _step_propagators(L, taus):
    """Yield P(tau_k) v-stepping matrices for an ascending grid."""
    steps = np.diff(np.concatenate(([0.0], taus)))
    cache = {}
    ref = max(taus[-1], 1e-300)
    for h in steps:
        key = round(h / ref, 10)
        if key not in cache:
            cache[key] = propagator(L, h)
        yield cache[key]


def two_time_g2(L, a, taus, rho_s=None):
    """Normalised intensity correlation of the field proportional to ``a``.

    g2(tau) = Tr[a^dag a P(tau)(a rho_s a^dag)] / Tr[a^dag a rho_s]^2,
    with P(tau) = exp(L tau) applied step by step along ``taus``.
    """
    taus = np.asarray(taus, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise ParameterError("taus must be a non-empty 1-d grid")
    if np.any(taus < 0) or np.any(np.diff(taus) < 0):
        raise ParameterError("taus must be non-negative and ascending")
    a = _square(a, "field operator")
    if rho_s is None:
        rho_s = steady_state(L)
    ad = a.conj().T
    num = ad @ a
    flux = np.trace(num @ rho_s).real
    if not flux > 1e-14 * max(1.0, np.abs(num).max()):
        raise ZeroOccupationError(f"steady-state photon number {flux:.3g} is zero")
    obs = vec(num.T)
    v = vec(a @ rho_s @ ad)
    vals = np.empty(taus.size)
    for k, P in enumerate(_step_propagators(L, taus)):
        v = P @ v
        vals[k] = (obs @ v).real
    return G2Curve(taus=taus, values=vals / flux**2)

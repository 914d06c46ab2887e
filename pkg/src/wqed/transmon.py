"""Voltage-biased Cooper-pair box in the charge basis."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import NumericalError, ParameterError, TruncationError
from .params import E, HBAR


@dataclass(frozen=True)
class TransmonSpectrum:
    """Lowest ``nLevels`` eigenstates of the box.

    Attributes
    ----------
    omegas : ndarray
        Level angular frequencies in rad/s, ground state at 0.
    chargeME : ndarray
        Charge matrix elements <i|X|j> in coulomb.
    epsilons : ndarray
        Charge dispersion of each level in joule (asymptotic formula).
    energies : ndarray
        Unshifted eigenenergies in joule.
    """

    omegas: np.ndarray
    chargeME: np.ndarray
    epsilons: np.ndarray
    nLevels: int
    nCut: int
    energies: np.ndarray | None = None

    def transition(self, i: int, j: int) -> float:
        """omega_i - omega_j in rad/s."""
        return float(self.omegas[i] - self.omegas[j])


def min_cutoff(EC: float, EJ: float) -> int:
    return 4 + math.ceil(math.sqrt(EJ / EC))


def default_cutoff(EC: float, EJ: float) -> int:
    return max(10, min_cutoff(EC, EJ) + 5)


def build_charge_hamiltonian(EC, EJ, ng, nCut):
    """Charge-basis Hamiltonian and charge operator, both in SI units.

    The basis runs over Cooper-pair numbers m = -nCut..nCut. Returns
    ``(H, X)`` with H in joule and X in coulomb; X has diagonal 2e(m - ng).
    """
    if not (EC > 0 and EJ >= 0):
        raise ParameterError("EC must be positive and EJ non-negative")
    if nCut < min_cutoff(EC, EJ):
        raise TruncationError(
            f"nCut={nCut} below the minimum {min_cutoff(EC, EJ)} for EJ/EC={EJ / EC:.3g}"
        )
    m = np.arange(-nCut, nCut + 1, dtype=float)
    H = np.diag(4.0 * EC * (m - ng) ** 2).astype(complex)
    off = np.full(2 * nCut, -EJ / 2.0)
    H += np.diag(off, 1) + np.diag(off, -1)
    X = np.diag(2.0 * E * (m - ng)).astype(complex)
    return H, X


def _fix_phases(vecs):
    idx = np.argmax(np.abs(vecs), axis=0)
    lead = vecs[idx, np.arange(vecs.shape[1])]
    return vecs * (np.abs(lead) / lead)


def diagonalize(H, X, nLevels, EC=None, EJ=None, nCut=None) -> TransmonSpectrum:
    """Sorted spectrum and charge matrix elements of the lowest ``nLevels`` states.

    Each eigenvector is rotated so that its largest-magnitude component is
    real and positive. ``EC`` and ``EJ`` are optional and only used to fill
    in the asymptotic charge dispersions.
    """
    H = np.asarray(H)
    if nLevels > H.shape[0]:
        raise ParameterError(f"nLevels={nLevels} exceeds dimension {H.shape[0]}")
    if not np.allclose(H, H.conj().T, rtol=0, atol=1e-12 * np.abs(H).max()):
        raise ParameterError("Hamiltonian is not Hermitian")
    try:
        evals, evecs = linalg.eigh(H)
    except linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigensolver failed (condition estimate {np.linalg.cond(H):.3g}): {exc}"
        ) from exc
    evals = evals[:nLevels]
    vecs = _fix_phases(evecs[:, :nLevels])
    XME = vecs.conj().T @ np.asarray(X) @ vecs
    XME = 0.5 * (XME + XME.conj().T)
    if EC is not None and EJ is not None and EJ > 0:
        eps = np.array([charge_dispersion(EC, EJ, k) for k in range(nLevels)])
    else:
        eps = np.full(nLevels, np.nan)
    return TransmonSpectrum(
        omegas=(evals - evals[0]) / HBAR,
        chargeME=XME,
        epsilons=eps,
        nLevels=nLevels,
        nCut=nCut if nCut is not None else (H.shape[0] - 1) // 2,
        energies=evals,
    )


def solve_transmon(EC, EJ, ng=0.0, nLevels=3, nCut=None) -> TransmonSpectrum:
    """Build and diagonalise in one call, using the default cutoff."""
    if nCut is None:
        nCut = default_cutoff(EC, EJ)
    H, X = build_charge_hamiltonian(EC, EJ, ng, nCut)
    return diagonalize(H, X, nLevels, EC=EC, EJ=EJ, nCut=nCut)


def charge_dispersion(EC: float, EJ: float, k: int) -> float:
    """Asymptotic peak-to-peak charge dispersion of level ``k`` (joule, signed)."""
    if k < 0:
        raise ParameterError("level index must be non-negative")
    ratio = EJ / (2.0 * EC)
    return (
        (-1) ** k
        * EC
        * 2.0 ** (4 * k + 5)
        / math.factorial(k)
        * math.sqrt(2.0 / math.pi)
        * ratio ** (k / 2.0 + 0.75)
        * math.exp(-math.sqrt(8.0 * EJ / EC))
    )


def spectrum_vs_ng(omega_quarter: float, epsilon: float, ng):
    """omega_k(ng) = omega_k(1/4) - (epsilon_k / 2 hbar) cos(2 pi ng), in rad/s."""
    return omega_quarter - epsilon / (2.0 * HBAR) * np.cos(2.0 * np.pi * np.asarray(ng))


def spectrum_slope(epsilon: float, ng):
    """d omega_k / d ng of the cosine approximation, in rad/s."""
    return np.pi * epsilon / HBAR * np.sin(2.0 * np.pi * np.asarray(ng))


def diagonal_charge_from_slope(EC: float, epsilon: float, ng):
    """|<k|X|k>| = (e / 4 EC) hbar |d omega_k / d ng| (coulomb)."""
    return E / (4.0 * EC) * HBAR * np.abs(spectrum_slope(epsilon, ng))

"""Thermal occupations, transition rates and dephasing rates of the transmon."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .params import HBAR, KB, R_K, DerivedParams
from .transmon import TransmonSpectrum, diagonal_charge_from_slope


@dataclass(frozen=True)
class RateSet:
    """Decay and dephasing rates, all in rad/s.

    ``GammaDown[i, j]`` is the relaxation rate i -> j (i above j) and
    ``GammaUp[i, j]`` the excitation rate i -> j (i below j). ``nTherm[i, j]``
    is the Bose occupation at |omega_ij|.
    """

    GammaDown: np.ndarray
    GammaUp: np.ndarray
    GammaPhi: np.ndarray
    gammaTotal: np.ndarray
    nTherm: np.ndarray

    @property
    def Gamma(self) -> np.ndarray:
        """All transition rates, Gamma[i, j] for i -> j."""
        return self.GammaDown + self.GammaUp


def thermal_occupation(omega, T):
    """Bose-Einstein occupation at angular frequency ``omega`` and temperature ``T``."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0):
        raise ParameterError("omega must be positive")
    if T < 0:
        raise ParameterError("temperature must be non-negative")
    if T == 0:
        n = np.zeros_like(omega)
    else:
        with np.errstate(over="ignore", divide="ignore"):  # deep freeze-out: 1/inf -> 0
            n = 1.0 / np.expm1(HBAR * omega / (KB * T))
    return n if n.ndim else float(n)


def _occupations(omegas, T):
    w = np.abs(omegas[:, None] - omegas[None, :])
    n = np.zeros_like(w)
    mask = w > 0
    if T > 0:
        n[mask] = thermal_occupation(w[mask], T)
    return n


def transition_rates(spec: TransmonSpectrum, d: DerivedParams, T: float,
                     GammaPhi=None) -> RateSet:
    """Relaxation and excitation rates from the exact charge matrix elements.

    Pure dephasing is taken from ``GammaPhi`` if given, else computed at the
    gate charge stored in ``d``.
    """
    w = spec.omegas[:, None] - spec.omegas[None, :]
    n = _occupations(spec.omegas, T)
    X2 = np.abs(spec.chargeME) ** 2
    pref = 2.0 * d.gamma / HBAR
    down = np.where(w > 0, pref * w * (1.0 + n) * X2, 0.0)
    up = np.where(w < 0, pref * np.abs(w) * n * X2, 0.0)
    if GammaPhi is None:
        GammaPhi = np.array([pure_dephasing(spec, d, T, k) for k in range(spec.nLevels)])
    GammaPhi = np.asarray(GammaPhi, dtype=float)
    gt = dephasing_matrix_from(down + up, GammaPhi)
    return RateSet(GammaDown=down, GammaUp=up, GammaPhi=GammaPhi, gammaTotal=gt, nTherm=n)


def asymptotic_rates(j: int, kappa: float, EJ: float, Z0: float, n: float):
    """Closed-form transmon rates for the j+1 <-> j transition.

    Returns ``(relax, excite)`` in rad/s:
    pi (j+1) kappa^2 (EJ/hbar) (Z0/R_K) (1+n) and the same with n.
    """
    if j < 0:
        raise ParameterError("j must be non-negative")
    base = math.pi * (j + 1) * kappa**2 * (EJ / HBAR) * (Z0 / R_K)
    return base * (1.0 + n), base * n


def pure_dephasing(spec: TransmonSpectrum, d: DerivedParams, T: float, k: int) -> float:
    """Thermal pure-dephasing rate of level ``k`` at the gate charge ``d.ng``.

    The diagonal charge element is obtained from the slope of the cosine
    dispersion, so the rate vanishes at ng = 0 and 1/2.
    """
    if T < 0:
        raise ParameterError("temperature must be non-negative")
    if T == 0:
        return 0.0
    xkk = diagonal_charge_from_slope(d.EC, spec.epsilons[k], d.ng)
    return float(2.0 * d.gamma / HBAR * (KB * T / HBAR) * xkk**2)


def max_pure_dephasing(kappa: float, Z0: float, T: float, epsilon: float, EC: float) -> float:
    """kappa^2 (Z0/R_K) (kB T/hbar) (pi^3/8) |epsilon/EC|^2, the value at ng = 1/4."""
    return kappa**2 * (Z0 / R_K) * (KB * T / HBAR) * math.pi**3 / 8.0 * (epsilon / EC) ** 2


def dephasing_matrix_from(Gamma, GammaPhi):
    Gamma = np.asarray(Gamma, dtype=float)
    out = Gamma.copy()
    np.fill_diagonal(out, 0.0)
    leave = out.sum(axis=1)
    g = GammaPhi[:, None] + GammaPhi[None, :] + 0.5 * (leave[:, None] + leave[None, :])
    np.fill_diagonal(g, 0.0)
    return g


def dephasing_matrix(rates: RateSet) -> np.ndarray:
    """Off-diagonal decay rates gamma_ij; the diagonal is zero."""
    return dephasing_matrix_from(rates.Gamma, rates.GammaPhi)

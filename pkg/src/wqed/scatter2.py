"""Reflection and transmission of a coherent drive by a two-level transmon.

The drive is handled in the frame rotating at the drive frequency, so all
Hamiltonians here are time independent. Detunings are
``delta = omega_p - omega_10``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import operators as ops
from .errors import ParameterError
from .liouville import build_liouvillian, steady_state
from .params import HBAR, flux_to_rabi

# probe Rabi frequency (relative to Gamma10) used to extract the linear response when Nin == 0
_LINEAR_PROBE = 1e-7


@dataclass(frozen=True)
class DriveSpec:
    """Coherent drive on the 0-1 transition.

    Attributes
    ----------
    Nin : float
        Incident photon flux in 1/s.
    delta : float
        Drive detuning in rad/s.
    Gamma10 : float
        Relaxation rate 1 -> 0 in rad/s (including the thermal factor 1 + n).
    gamma10 : float
        Decay rate of the 0-1 coherence in rad/s.
    nth : float
        Thermal occupation at omega_10; sets the excitation rate
        Gamma01 = Gamma10 n / (1 + n).
    """

    Nin: float
    delta: float
    Gamma10: float
    gamma10: float | None = None
    nth: float = 0.0

    def __post_init__(self):
        if self.gamma10 is None:
            object.__setattr__(self, "gamma10", 0.5 * self.Gamma10 * (1 + 2 * self.nth) / (1 + self.nth))
        if self.Nin < 0:
            raise ParameterError("Nin must be non-negative")
        if not self.Gamma10 > 0:
            raise ParameterError("Gamma10 must be positive")
        if self.nth < 0:
            raise ParameterError("thermal occupation must be non-negative")
        if self.gamma10 < 0.5 * (self.Gamma10 + self.Gamma01) * (1 - 1e-12):
            raise ParameterError(
                f"gamma10={self.gamma10:.6g} below (Gamma10 + Gamma01)/2="
                f"{0.5 * (self.Gamma10 + self.Gamma01):.6g}"
            )

    @property
    def Gamma01(self) -> float:
        return self.Gamma10 * self.nth / (1.0 + self.nth)

    @property
    def Gamma_rad(self) -> float:
        """Spontaneous (zero-temperature) emission rate into the lines."""
        return self.Gamma10 / (1.0 + self.nth)

    @property
    def rabi(self) -> float:
        return flux_to_rabi(self.Nin, self.Gamma_rad)


@dataclass(frozen=True)
class ScatterResult:
    r: complex
    t: complex

    @property
    def R(self) -> float:
        return abs(self.r) ** 2

    @property
    def T(self) -> float:
        return abs(self.t) ** 2

    @classmethod
    def from_r(cls, r):
        r = complex(r)
        return cls(r=r, t=1.0 + r)


def analytic_rho01(d: DriveSpec, omega10: float, Z0: float, OmegaP: float) -> complex:
    """Steady-state <0|rho|1> for a drive of voltage amplitude ``OmegaP`` (volt).

    Rotating-frame amplitude; the e^{i omega_p t} factor is stripped.
    """
    g, D, G = d.gamma10, d.delta, d.Gamma10
    e = HBAR * omega10 * Z0
    num = 0.5 * math.sqrt(e * G) * (D + 1j * g) * OmegaP
    return num / (e * g**2 + e * D**2 + g * OmegaP**2)


def voltage_amplitude(Nin: float, omega10: float, Z0: float) -> float:
    """Voltage amplitude of an incident wave carrying ``Nin`` photons per second."""
    return math.sqrt(2.0 * Z0 * HBAR * omega10 * Nin)


def analytic_rt(d: DriveSpec) -> ScatterResult:
    """Closed-form r and t = 1 + r for the negative-frequency field component."""
    x = d.delta / d.gamma10
    r0 = d.Gamma10 / (2.0 * d.gamma10)
    r = -r0 * (1 - 1j * x) / (1 + x**2 + 2 * d.Nin / d.gamma10)
    return ScatterResult.from_r(r)


def two_level_liouvillian(d: DriveSpec, rabi=None):
    """Rotating-frame generator for the driven, damped two-level system."""
    if rabi is None:
        rabi = d.rabi
    H = -d.delta * ops.projector(2, 1) + 0.5 * rabi * ops.sigma_x()
    dephase = d.gamma10 - 0.5 * (d.Gamma10 + d.Gamma01)
    # sigma_z channel at rate gamma_phi/2 damps the coherence by gamma_phi
    terms = [
        (d.Gamma10, ops.sigma_minus()),
        (d.Gamma01, ops.sigma_plus()),
        (max(dephase, 0.0) / 2.0, ops.sigma_z()),
    ]
    return build_liouvillian(H, terms)


def reflection_from_coherence(rho01: complex, Gamma_rad: float, rabi: float) -> complex:
    """r = i Gamma rho01 / Omega_R for the field re-emitted by the driven transition."""
    return 1j * Gamma_rad * rho01 / rabi


def numeric_rt(d: DriveSpec) -> ScatterResult:
    """r and t from the numerical steady state of the rotating-frame master equation.

    For ``Nin == 0`` the linear response is extracted with a vanishingly weak
    probe.
    """
    rabi = d.rabi if d.Nin > 0 else _LINEAR_PROBE * d.Gamma_rad
    rho = steady_state(two_level_liouvillian(d, rabi))
    return ScatterResult.from_r(reflection_from_coherence(rho[0, 1], d.Gamma_rad, rabi))


def sweep_two_level(deltas, Nin, Gamma10, gamma10=None, nth=0.0, method="analytic"):
    """Evaluate r, t over a detuning grid.

    Returns a list of :class:`ScatterResult`, one per entry of ``deltas``.
    ``method`` is ``"analytic"`` or ``"numeric"``.
    """
    solver = {"analytic": analytic_rt, "numeric": numeric_rt}.get(method)
    if solver is None:
        raise ParameterError(f"unknown method {method!r}")
    deltas = np.asarray(deltas, dtype=float)
    if not np.all(np.isfinite(deltas)):
        raise ParameterError("detuning grid must be finite")
    return [solver(DriveSpec(Nin, float(D), Gamma10, gamma10, nth)) for D in deltas]


def records(deltas, results, gamma10):
    """Plain rows (delta/gamma10, Re r, Im r, R, T)."""
    return [
        (float(D) / gamma10, res.r.real, res.r.imag, res.R, res.T)
        for D, res in zip(deltas, results)
    ]

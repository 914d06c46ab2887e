"""Probe scattering on a three-level transmon with a control drive on the 1-2 transition.

Both drives are removed by the doubly rotating frame
U = diag(1, e^{-i w_p t}, e^{-i (w_p + w_c) t}). Detunings are
``deltaP = w_p - w_10`` and ``deltaC = w_c - w_21``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import operators as ops
from .errors import ParameterError, UnsupportedCaseError
from .liouville import build_liouvillian, steady_state
from .params import flux_to_rabi
from .scatter2 import DriveSpec, ScatterResult, analytic_rt, reflection_from_coherence

_LINEAR_PROBE = 1e-7


@dataclass(frozen=True)
class ThreeLevelDrive:
    """Probe and control drives plus the decay rates of the ladder (rad/s).

    Missing rates default to the zero-temperature, dephasing-free values:
    Gamma21 = 2 Gamma10, gamma10 = Gamma10/2, gamma20 = Gamma21/2 and
    gamma21 = (Gamma10 + Gamma21)/2.
    """

    NinP: float
    NinC: float
    deltaP: float
    Gamma10: float
    deltaC: float = 0.0
    Gamma21: float | None = None
    gamma10: float | None = None
    gamma20: float | None = None
    gamma21: float | None = None
    n10: float = 0.0
    n21: float = 0.0
    pure_dephasing: tuple = field(init=False, repr=False, default=(0.0, 0.0, 0.0))

    def __post_init__(self):
        if self.NinP < 0 or self.NinC < 0:
            raise ParameterError("photon fluxes must be non-negative")
        if not self.Gamma10 > 0:
            raise ParameterError("Gamma10 must be positive")
        if self.n10 < 0 or self.n21 < 0:
            raise ParameterError("thermal occupations must be non-negative")
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        if self.Gamma21 is None:
            set_("Gamma21", 2.0 * self.Gamma10)
        G10, G01, G21, G12 = self.Gamma10, self.Gamma01, self.Gamma21, self.Gamma12
        # half the total rate out of each level
        out = np.array([G01, G10 + G12, G21]) / 2.0
        if self.gamma10 is None:
            set_("gamma10", out[0] + out[1])
        if self.gamma20 is None:
            set_("gamma20", out[0] + out[2])
        if self.gamma21 is None:
            set_("gamma21", out[1] + out[2])
        r10 = self.gamma10 - out[0] - out[1]
        r20 = self.gamma20 - out[0] - out[2]
        r21 = self.gamma21 - out[1] - out[2]
        phi = np.array([r10 + r20 - r21, r10 + r21 - r20, r20 + r21 - r10]) / 2.0
        scale = max(self.Gamma10, G21)
        if np.any(phi < -1e-12 * scale):
            raise ParameterError(
                "dephasing rates are inconsistent with non-negative level dephasing "
                f"(implied per-level rates {phi})"
            )
        set_("pure_dephasing", tuple(float(max(p, 0.0)) for p in phi))

    @property
    def Gamma01(self) -> float:
        return self.Gamma10 * self.n10 / (1.0 + self.n10)

    @property
    def Gamma12(self) -> float:
        return self.Gamma21 * self.n21 / (1.0 + self.n21)

    @property
    def rabi_probe(self) -> float:
        return flux_to_rabi(self.NinP, self.Gamma10 / (1.0 + self.n10))

    @property
    def rabi_control(self) -> float:
        return flux_to_rabi(self.NinC, self.Gamma21 / (1.0 + self.n21))


def rotating_frame_3lvl(d: ThreeLevelDrive, rabi_probe=None):
    """Hamiltonian (rad/s) and Lindblad channels in the doubly rotating frame.

    Returns ``(H, terms)`` ready for :func:`build_liouvillian`.
    """
    if rabi_probe is None:
        rabi_probe = d.rabi_probe
    H = (
        -d.deltaP * ops.projector(3, 1)
        - (d.deltaP + d.deltaC) * ops.projector(3, 2)
        + 0.5 * rabi_probe * ops.sigma_x(3, 1)
        + 0.5 * d.rabi_control * ops.sigma_x(3, 2)
    )
    terms = [
        (d.Gamma10, ops.sigma_minus(3, 1)),
        (d.Gamma21, ops.sigma_minus(3, 2)),
        (d.Gamma01, ops.sigma_plus(3, 1)),
        (d.Gamma12, ops.sigma_plus(3, 2)),
    ]
    # D(|k><k|) at rate 2 G_phi^k damps every coherence touching k by G_phi^k
    terms += [(2.0 * g, ops.projector(3, k)) for k, g in enumerate(d.pure_dephasing)]
    return H, terms


def numeric_rho(d: ThreeLevelDrive, rabi_probe=None):
    H, terms = rotating_frame_3lvl(d, rabi_probe)
    return steady_state(build_liouvillian(H, terms))


def numeric_r_probe(d: ThreeLevelDrive) -> ScatterResult:
    """Probe r, t from the full numerical steady state (any control detuning)."""
    Gp = d.Gamma10 / (1.0 + d.n10)
    rabi = d.rabi_probe if d.NinP > 0 else _LINEAR_PROBE * Gp
    rho = numeric_rho(d, rabi)
    # only the 0-1 coherence radiates at the probe frequency
    return ScatterResult.from_r(reflection_from_coherence(rho[0, 1], Gp, rabi))


def control_coherence(d: ThreeLevelDrive) -> complex:
    """<1|rho|2>, the component re-emitted at the control frequency."""
    return complex(numeric_rho(d)[1, 2])


def analytic_rho10_first_order(d: ThreeLevelDrive) -> complex:
    """<1|rho|0> to first order in the probe-to-control amplitude ratio.

    Rotating-frame amplitude in the Rabi-frequency parametrisation.
    """
    Op, Oc = d.rabi_probe, d.rabi_control
    two = d.gamma20 - 1j * (d.deltaC + d.deltaP)
    one = d.gamma10 - 1j * d.deltaP
    return -2j * two * Op / (4.0 * one * two + Oc**2)


def analytic_r_probe(d: ThreeLevelDrive) -> ScatterResult:
    """Closed-form probe reflection for resonant control.

    With the control off the ladder reduces exactly to the two-level system,
    so the saturating two-level expression is returned in that case.
    """
    if d.deltaC != 0:
        raise UnsupportedCaseError("closed form requires deltaC = 0; use numeric_r_probe")
    if d.NinC == 0:
        return analytic_rt(DriveSpec(d.NinP, d.deltaP, d.Gamma10, d.gamma10))
    G10, G21, N = d.Gamma10, d.Gamma21, d.NinC
    g10, g20, D = d.gamma10, d.gamma20, d.deltaP
    num = 2 * G10 * (g20**2 + D**2) * (g10 - 1j * D) + G10 * G21 * (g20 + 1j * D) * N
    den = (4 * (g10**2 + D**2) * (g20**2 + D**2)
           + 4 * G21 * (g10 * g20 - D**2) * N + G21**2 * N**2)
    return ScatterResult.from_r(-num / den)


def sweep_three_level(deltaPs, NinCs, NinP, Gamma10, deltaC=0.0, method="analytic", **rates):
    """Probe response over the grid deltaPs x NinCs.

    Returns rows ``(deltaP, NinC, Re r, Im r, Tp)`` in the order of
    ``itertools.product(NinCs, deltaPs)``.
    """
    if method == "analytic":
        solver = analytic_r_probe
    elif method == "numeric":
        solver = numeric_r_probe
    else:
        raise ParameterError(f"unknown method {method!r}")
    deltaPs = np.atleast_1d(np.asarray(deltaPs, dtype=float))
    NinCs = np.atleast_1d(np.asarray(NinCs, dtype=float))
    if not (np.all(np.isfinite(deltaPs)) and np.all(np.isfinite(NinCs))):
        raise ParameterError("sweep grids must be finite")
    rows = []
    for Nc in NinCs:
        for Dp in deltaPs:
            res = solver(ThreeLevelDrive(NinP, float(Nc), float(Dp), Gamma10, deltaC, **rates))
            rows.append((float(Dp), float(Nc), res.r.real, res.r.imag, res.T))
    return rows

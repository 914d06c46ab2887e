"""Circuit parameters, unit conversions and transmission-line port mappings.

Internally every frequency and rate is an angular frequency in rad/s.
Energies are accepted and returned in joules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as sc

from .errors import ParameterError

E = sc.e
HBAR = sc.hbar
H_PLANCK = sc.h
KB = sc.k
#: resistance quantum h/e^2
R_K = sc.h / sc.e**2


@dataclass(frozen=True)
class CircuitParams:
    """Raw circuit values for a transmon attached to ``nPorts`` lines.

    Attributes
    ----------
    Cc, CJ : float
        Coupling and junction capacitance in farad.
    EJ : float
        Josephson energy in joule.
    Z0 : float
        Characteristic impedance of each line in ohm.
    T : float
        Temperature in kelvin.
    VDC : float
        DC bias voltage in volt.
    nPorts : int
        Number of semi-infinite lines meeting at the island (2 = infinite line).
    """

    Cc: float
    CJ: float
    EJ: float
    Z0: float = 50.0
    T: float = 0.0
    VDC: float = 0.0
    nPorts: int = 1

    def __post_init__(self):
        for name in ("Cc", "CJ", "EJ", "Z0"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.T < 0:
            raise ParameterError(f"T must be non-negative, got {self.T!r}")
        if int(self.nPorts) != self.nPorts or self.nPorts < 1:
            raise ParameterError(f"nPorts must be a positive integer, got {self.nPorts!r}")


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived from :class:`CircuitParams`.

    ``gamma`` (ohm) and ``tauRC`` (s) already include the 1/nPorts factor.
    ``kappa`` is the capacitive division ratio Cc/CSigma.
    """

    CSigma: float
    EC: float
    gamma: float
    tauRC: float
    ng: float
    nPorts: int = 1
    Z0: float = 50.0
    kappa: float = 0.0
    CJ: float = 0.0


def derive_params(p: CircuitParams) -> DerivedParams:
    """Total capacitance, charging energy, damping constant, RC time and gate charge.

    ``gamma`` is the damping constant in ohm, ``Z/n (Cc/CSigma)^2``; the
    decay rates follow from it as ``(2 gamma / hbar) omega |X|^2``.
    """
    CSigma = p.Cc + p.CJ
    zeff = p.Z0 / p.nPorts
    return DerivedParams(
        CSigma=CSigma,
        EC=E**2 / (2 * CSigma),
        gamma=zeff * (p.Cc / CSigma) ** 2,
        tauRC=zeff * p.Cc * p.CJ / CSigma,
        ng=p.Cc * p.VDC / (2 * E),
        nPorts=int(p.nPorts),
        Z0=p.Z0,
        kappa=p.Cc / CSigma,
        CJ=p.CJ,
    )


@dataclass(frozen=True)
class PortMapping:
    """Input-output weights for ``n`` symmetric lines.

    ``in_weight`` multiplies each incoming field in the drive on the island,
    ``self_reflection`` and ``cross_transmission`` map incoming fields onto an
    outgoing port, and ``emission_weight`` (tauRC/CJ) multiplies the island
    charge in every outgoing field.
    """

    n: int
    in_weight: float
    self_reflection: float
    cross_transmission: float
    emission_weight: float
    gamma: float
    tauRC: float

    def output_coefficients(self, port: int):
        """Row of weights giving outgoing port ``port`` from the ``n`` incoming fields."""
        row = [self.cross_transmission] * self.n
        row[port] = self.self_reflection
        return row


def map_ports(d: DerivedParams, n: int) -> PortMapping:
    if int(n) != n or n < 1:
        raise ParameterError(f"number of ports must be >= 1, got {n!r}")
    n = int(n)
    # rescale from the port count d was derived for
    scale = d.nPorts / n
    gamma = d.gamma * scale
    tauRC = d.tauRC * scale
    return PortMapping(
        n=n,
        in_weight=1.0 / n,
        self_reflection=2.0 / n - 1.0,
        cross_transmission=2.0 / n,
        emission_weight=tauRC / d.CJ,
        gamma=gamma,
        tauRC=tauRC,
    )


def dbm_to_watt(p_dbm: float) -> float:
    return 10.0 ** (p_dbm / 10.0) * 1e-3


def watt_to_dbm(p_watt: float) -> float:
    if p_watt <= 0:
        raise ParameterError("power must be positive to express in dBm")
    return 10.0 * math.log10(p_watt / 1e-3)


def power_to_flux(P: float, omega: float, unit: str = "W") -> float:
    """Photon flux (1/s) carried by a monochromatic wave of power ``P``.

    ``unit`` is ``"W"`` or ``"dBm"``. The power is taken as the incident
    power in one propagation direction.
    """
    if not omega > 0:
        raise ParameterError(f"omega must be positive, got {omega!r}")
    if unit == "dBm":
        P = dbm_to_watt(P)
    elif unit != "W":
        raise ParameterError(f"unknown power unit {unit!r}")
    if P < 0:
        raise ParameterError(f"power must be non-negative, got {P!r}")
    return P / (HBAR * omega)


def flux_to_power(flux: float, omega: float) -> float:
    if not omega > 0:
        raise ParameterError(f"omega must be positive, got {omega!r}")
    if flux < 0:
        raise ParameterError(f"photon flux must be non-negative, got {flux!r}")
    return flux * HBAR * omega


def flux_to_rabi(Nin: float, Gamma: float) -> float:
    """Rabi angular frequency sqrt(2 Gamma Nin) of a coherent drive.

    ``Gamma`` is the radiative decay rate of the driven transition; with this
    mapping the saturation term Omega^2/(gamma Gamma) equals 2 Nin / gamma.
    """
    if Nin < 0:
        raise ParameterError(f"photon flux must be non-negative, got {Nin!r}")
    if not Gamma > 0:
        raise ParameterError(f"Gamma must be positive, got {Gamma!r}")
    return math.sqrt(2.0 * Gamma * Nin)

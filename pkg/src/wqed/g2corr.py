"""Second-order correlations of the field scattered by a resonantly driven two-level transmon.

A finite detection bandwidth is modelled by a single-mode filter resonator
cascaded after the transmon. Joint states live on transmon (x) resonator,
with the transmon factor first. Everything is written in the frame rotating
at omega_10, where the bare transmon and resonator Hamiltonians vanish.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from dataclasses import field as dc_field

import numpy as np

from . import operators as ops
from .errors import ParameterError, TruncationError, UnsupportedCaseError
from .liouville import (G2Curve, build_liouvillian, sandwich_terms, spost, spre,
                        steady_state, trace_defect, two_time_g2)
from .rates import thermal_occupation

DEFAULT_NFOCK = 8
MAX_NFOCK = 32  # joint generator is (2 nFock)^2 square; keeps memory below ~300 MB
CONVERGENCE_TOL = 1e-3


def default_taus(n=400, tmax=200e-9):
    return np.linspace(0.0, tmax, n)


@dataclass(frozen=True)
class G2Config:
    """Settings for one g2 curve.

    Attributes
    ----------
    field : {"reflected", "transmitted"}
    filtered : bool
        Whether to pass the output through the filter resonator.
    gammaBW : float
        Filter energy-decay rate in rad/s.
    nFock : int
        Resonator truncation.
    T : float
        Temperature in kelvin.
    Gamma10 : float
        Zero-temperature emission rate in rad/s; the thermal rates are
        Gamma10 (1 + n) and Gamma10 n.
    omega10 : float
        Transition angular frequency, used for the thermal occupation.
    Nin : float
        Incident photon flux in 1/s.
    thermal_factor : {"verbatim", "conventional"}
        "verbatim" weights the resonator dissipators by (n/2 + 1) and n/2;
        "conventional" by (n + 1) and n.
    """

    field: str = "reflected"
    filtered: bool = True
    gammaBW: float = 2 * math.pi * 1e9
    nFock: int = DEFAULT_NFOCK
    T: float = 0.0
    Gamma10: float = 2 * math.pi * 41e6
    omega10: float = 2 * math.pi * 5.12e9
    Nin: float = 0.0
    tauGrid: np.ndarray = dc_field(default_factory=default_taus)
    thermal_factor: str = "verbatim"

    def __post_init__(self):
        if self.field not in ("reflected", "transmitted"):
            raise ParameterError(f"field must be 'reflected' or 'transmitted', got {self.field!r}")
        if self.thermal_factor not in ("verbatim", "conventional"):
            raise ParameterError(f"unknown thermal_factor {self.thermal_factor!r}")
        if self.filtered:
            if self.nFock < 2:
                raise ParameterError("nFock must be >= 2 with a filter")
            if not self.gammaBW > 0:
                raise ParameterError("gammaBW must be positive with a filter")
        if not self.Gamma10 > 0 or not self.omega10 > 0:
            raise ParameterError("Gamma10 and omega10 must be positive")
        if self.Nin < 0 or self.T < 0:
            raise ParameterError("Nin and T must be non-negative")
        taus = np.asarray(self.tauGrid, dtype=float)
        if taus.ndim != 1 or np.any(taus < 0) or np.any(np.diff(taus) < 0):
            raise ParameterError("tauGrid must be non-negative and ascending")
        object.__setattr__(self, "tauGrid", taus)

    @property
    def nth(self) -> float:
        return thermal_occupation(self.omega10, self.T) if self.T > 0 else 0.0


def _drive_strength(cfg: G2Config) -> float:
    """Coefficient of i[rho, sigma_x]: sqrt(Gamma10 Nin / (2 (n+1))) with thermal Gamma10."""
    n = cfg.nth
    G10 = cfg.Gamma10 * (1 + n)
    return math.sqrt(G10 * cfg.Nin / (2.0 * (n + 1.0)))


def two_level_g2_liouvillian(cfg: G2Config):
    """Transmon-only generator, used for the unfiltered correlation."""
    n = cfg.nth
    c = _drive_strength(cfg)
    # i c [rho, sx] = -i [c sx, rho]
    H = c * ops.sigma_x()
    terms = [(cfg.Gamma10 * (1 + n), ops.sigma_minus()), (cfg.Gamma10 * n, ops.sigma_plus())]
    return build_liouvillian(H, terms)


def joint_operators(nFock):
    sm = np.kron(ops.sigma_minus(), np.eye(nFock))
    a = np.kron(np.eye(2), ops.destroy(nFock))
    return sm, a


def build_cascaded_liouvillian(cfg: G2Config):
    """Generator of the transmon cascaded into the filter resonator.

    Terms, with n the thermal occupation at omega_10, G10 = Gamma10 (1+n),
    G01 = Gamma10 n and k = gammaBW:

    - G10 D(s-) + G01 D(s+)
    - k [(n/2 + 1) D(a) + (n/2) D(a^dag)]
    - (i/2) sqrt(G10 (n+1) k) ([a, rho s+] + [a^dag, s- rho])
    - (i/2) sqrt(G01 n k) ([s+ rho, a] + [rho s-, a^dag])
    - i sqrt(G10 Nin / (2 (n+1))) [rho, sx]
    - transmitted field only: sqrt(k Nin / 2) [rho, a^dag - a]
    """
    if not cfg.filtered:
        raise ParameterError("cascaded generator requires filtered=True")
    n = cfg.nth
    k = cfg.gammaBW
    G10 = cfg.Gamma10 * (1 + n)
    G01 = cfg.Gamma10 * n
    sm, a = joint_operators(cfg.nFock)
    sp, ad = sm.conj().T, a.conj().T
    sx = sp + sm
    if cfg.thermal_factor == "verbatim":
        down, up = n / 2 + 1, n / 2
    else:
        down, up = n + 1, n
    H = _drive_strength(cfg) * sx
    terms = [(G10, sm), (G01, sp), (k * down, a), (k * up, ad)]

    extra = []
    c1 = 0.5j * math.sqrt(G10 * (n + 1) * k)
    # [a, rho s+] + [a^dag, s- rho]
    extra.append(c1 * (sandwich_terms(a, sp) - spost(sp @ a) + spre(ad @ sm) - sandwich_terms(sm, ad)))
    if n > 0:
        c2 = 0.5j * math.sqrt(G01 * n * k)
        # [s+ rho, a] + [rho s-, a^dag]
        extra.append(c2 * (sandwich_terms(sp, a) - spre(a @ sp) + spost(sm @ ad) - sandwich_terms(ad, sm)))
    if cfg.field == "transmitted":
        # c [rho, B] = -i [-i c B, rho] with B = a^dag - a anti-Hermitian, so -i c B is Hermitian
        H = H - 1j * math.sqrt(k * cfg.Nin / 2.0) * (ad - a)
    return build_liouvillian(H, terms, extra)


def _filtered_curve(cfg: G2Config) -> G2Curve:
    L = build_cascaded_liouvillian(cfg)
    _, a = joint_operators(cfg.nFock)
    return two_time_g2(L, a, cfg.tauGrid)


def g2_zero(cfg: G2Config) -> float:
    return float(_filtered_curve(replace(cfg, tauGrid=np.array([0.0]))).values[0])


def converged_nfock(cfg: G2Config, tol=CONVERGENCE_TOL) -> int:
    """Smallest tested truncation (doubling from cfg.nFock) with |g2(0; n) - g2(0; n+2)| < tol."""
    n = cfg.nFock
    while n <= MAX_NFOCK:
        g_n = g2_zero(replace(cfg, nFock=n))
        g_n2 = g2_zero(replace(cfg, nFock=n + 2))
        if abs(g_n - g_n2) < tol:
            return n
        n *= 2
    raise TruncationError(f"g2(0) not converged to {tol} up to nFock={MAX_NFOCK}")


def g2_filtered(cfg: G2Config, auto_truncate=True) -> G2Curve:
    """g2(tau) of the field leaking out of the filter resonator."""
    if auto_truncate:
        cfg = replace(cfg, nFock=converged_nfock(cfg))
    return _filtered_curve(cfg)


def g2_unfiltered(cfg: G2Config) -> G2Curve:
    """g2(tau) of the reflected field without a filter, i.e. with a -> sigma_minus."""
    if cfg.field != "reflected":
        raise UnsupportedCaseError("unfiltered g2 is only available for the reflected field")
    return two_time_g2(two_level_g2_liouvillian(cfg), ops.sigma_minus(), cfg.tauGrid)


def g2(cfg: G2Config) -> G2Curve:
    return g2_filtered(cfg) if cfg.filtered else g2_unfiltered(cfg)


def trace_preserving(cfg: G2Config, tol=1e-10) -> bool:
    L = build_cascaded_liouvillian(cfg) if cfg.filtered else two_level_g2_liouvillian(cfg)
    return trace_defect(L) <= tol * max(1.0, np.abs(L).max())


def steady_state_of(cfg: G2Config):
    L = build_cascaded_liouvillian(cfg) if cfg.filtered else two_level_g2_liouvillian(cfg)
    return steady_state(L)

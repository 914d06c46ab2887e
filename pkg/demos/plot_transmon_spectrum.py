"""
Transmon levels, matrix elements and decay rates
================================================

Diagonalise the charge-basis Hamiltonian of a transmon hanging off a 50 ohm
line, then turn the charge matrix elements into emission rates.
"""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from scipy import constants as sc

from wqed.params import CircuitParams, derive_params
from wqed.rates import asymptotic_rates, transition_rates
from wqed.transmon import charge_dispersion, solve_transmon

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

# %%
# Circuit: 10 fF coupling capacitor, 25 fF junction, EJ/EC = 50.
p = CircuitParams(Cc=10e-15, CJ=25e-15, EJ=1.0, Z0=50.0)
d = derive_params(p)
EJ = 50 * d.EC
p = CircuitParams(Cc=p.Cc, CJ=p.CJ, EJ=EJ, Z0=p.Z0, T=0.05)
print(f"EC/h = {d.EC / sc.h / 1e9:.3f} GHz, 1/(2 pi tauRC) = {1 / (2 * np.pi * d.tauRC) / 1e9:.0f} GHz")

spec = solve_transmon(d.EC, EJ, 0.0, nLevels=4)
f = spec.omegas / (2 * np.pi * 1e9)
print("levels [GHz]:", np.round(f, 4))
print(f"anharmonicity / EC = {sc.hbar * (spec.transition(2, 1) - spec.transition(1, 0)) / d.EC:.3f}")

# %%
# Only neighbouring levels are coupled by the charge operator.
X = np.abs(spec.chargeME) / sc.e
print("|X_ij| / e:\n", np.round(X, 4))

# %%
# Exact rates against the closed form with kappa = Cc/CSigma.
rates = transition_rates(spec, d, p.T)
relax, _ = asymptotic_rates(0, d.kappa, EJ, p.Z0, rates.nTherm[1, 0])
print(f"Gamma10/2pi = {rates.GammaDown[1, 0] / 2 / np.pi / 1e6:.1f} MHz (exact), "
      f"{relax / 2 / np.pi / 1e6:.1f} MHz (closed form)")

# %%
# Charge dispersion: exact ng sweep against the asymptotic amplitude.
ngs = np.linspace(0, 1, 81)
E = np.array([solve_transmon(d.EC, EJ, ng, nLevels=2).energies for ng in ngs])
fig, ax = plt.subplots(1, 2, figsize=(9, 3.5))
for k in range(2):
    ax[0].plot(ngs, (E[:, k] - E[:, k].mean()) / sc.h / 1e3, label=f"level {k}")
    eps = charge_dispersion(d.EC, EJ, k)
    ax[0].plot(ngs, -eps / 2 * np.cos(2 * np.pi * ngs) / sc.h / 1e3, "k:", lw=0.8)
ax[0].set_xlabel("ng")
ax[0].set_ylabel("E - <E> [kHz]")
ax[0].legend()
ratios = np.linspace(5, 100, 40)
alpha = [sc.hbar * np.diff(solve_transmon(d.EC, r * d.EC).omegas[:3], n=2)[0] / d.EC for r in ratios]
ax[1].plot(ratios, alpha)
ax[1].axhline(-1, color="k", ls=":")
ax[1].set_xlabel("EJ / EC")
ax[1].set_ylabel("anharmonicity / EC")
fig.tight_layout()
fig.savefig(OUT / "transmon_spectrum.png", dpi=120)

"""
Autler-Townes splitting of the probe transmission
=================================================

A control tone on the 1-2 transition dresses the first excited state. The
probe dip at the 0-1 resonance splits in two and the resonant probe is
transmitted once the control is strong.
"""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from wqed.scatter3 import ThreeLevelDrive, analytic_r_probe, numeric_r_probe

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

G = 2 * np.pi * 41e6
unit = G / (2 * np.pi)

# %%
# Probe transmittance versus detuning for three control strengths.
dp = np.linspace(-3, 3, 241)
fig, ax = plt.subplots(1, 2, figsize=(9, 3.5))
for nc in (0.01, 1.0, 10.0):
    Tp = [analytic_r_probe(ThreeLevelDrive(0.0, nc * unit, x * G, G)).T for x in dp]
    ax[0].plot(dp, Tp, label=f"NinC = {nc:g}")
    print(f"NinC = {nc:5g}: Tp(0) = {Tp[120]:.4f}")
ax[0].set_xlabel("probe detuning / Gamma10")
ax[0].set_ylabel("Tp")
ax[0].legend()

# %%
# Resonant probe against control strength, closed form and full steady state.
nc = np.geomspace(1e-2, 1e3, 41)
ana = [analytic_r_probe(ThreeLevelDrive(0.0, n * unit, 0.0, G)).T for n in nc]
num = [numeric_r_probe(ThreeLevelDrive(1e-4 * n * unit, n * unit, 0.0, G)).T for n in nc]
ax[1].semilogx(nc, ana, label="closed form")
ax[1].semilogx(nc, num, "o", ms=3, label="steady state")
ax[1].set_xlabel("NinC / (Gamma10 / 2 pi)")
ax[1].legend()
fig.tight_layout()
fig.savefig(OUT / "autler_townes.png", dpi=120)

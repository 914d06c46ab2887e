"""
Reflection of a weak coherent drive by a single transmon
========================================================

A two-level transmon in an open line reflects a resonant weak drive almost
perfectly. Stronger drives saturate the transition and the line becomes
transparent again.
"""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from wqed.scatter2 import DriveSpec, analytic_rt, numeric_rt

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

G = 2 * np.pi * 41e6
g = G / 2
unit = G / (2 * np.pi)  # flux unit of the figure axes

# %%
# Weak drive, Nin/(Gamma10/2pi) = 0.01.
x = np.linspace(-10, 10, 401)
res = [analytic_rt(DriveSpec(0.01 * unit, xi * g, G, g)) for xi in x]
R = np.array([r.R for r in res])
T = np.array([r.T for r in res])
print(f"on resonance: R = {R[200]:.4f}, T = {T[200]:.2e}")

# %%
# The numerical steady state gives the same r.
err = max(abs(numeric_rt(DriveSpec(0.01 * unit, xi * g, G, g)).r - r.r) for xi, r in zip(x, res))
print(f"max |r_numeric - r_analytic| = {err:.1e}")

fig, ax = plt.subplots(1, 2, figsize=(9, 3.5))
ax[0].plot(x, R, "r", label="R")
ax[0].plot(x, T, "b", label="T")
ax[0].set_xlabel("detuning / gamma10")
ax[0].legend()

# %%
# Saturation at resonance.
N = np.geomspace(1e-3, 1e3, 121)
ax[1].semilogx(N, [analytic_rt(DriveSpec(n * unit, 0.0, G)).R for n in N], "r", label="R")
ax[1].semilogx(N, [analytic_rt(DriveSpec(n * unit, 0.0, G)).T for n in N], "b", label="T")
ax[1].set_xlabel("Nin / (Gamma10 / 2 pi)")
ax[1].legend()
fig.tight_layout()
fig.savefig(OUT / "reflection_two_level.png", dpi=120)

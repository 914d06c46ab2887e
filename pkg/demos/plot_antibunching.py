"""
Antibunching of the reflected field behind a finite-bandwidth detector
======================================================================

The reflected field of a two-level emitter is perfectly antibunched. A
narrow detection filter washes the dip out, and thermal photons at 50 mK
raise g2(0) further.
"""
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from wqed.g2corr import G2Config, g2
from wqed.params import power_to_flux

OUT = Path(__file__).with_name("output")
OUT.mkdir(exist_ok=True)

MHz = 2 * np.pi * 1e6
w10 = 2 * np.pi * 5.12e9
Nin = power_to_flux(-131, w10, unit="dBm")
print(f"-131 dBm at 5.12 GHz carries {Nin:.3e} photons/s")

# %%
# Three detector settings and the bare emitter.
cases = [
    ("unfiltered", dict(filtered=False)),
    ("0 K, 1 GHz", dict(T=0.0, gammaBW=1000 * MHz)),
    ("0 K, 55 MHz", dict(T=0.0, gammaBW=55 * MHz)),
    ("50 mK, 55 MHz", dict(T=0.05, gammaBW=55 * MHz)),
    ("50 mK, 55 MHz, n+1 factors", dict(T=0.05, gammaBW=55 * MHz, thermal_factor="conventional")),
]
fig, ax = plt.subplots(figsize=(5, 3.5))
for label, kw in cases:
    curve = g2(G2Config(Gamma10=41 * MHz, omega10=w10, Nin=Nin, **kw))
    print(f"{label:28s} g2(0) = {curve.values[0]:.4f}")
    ax.plot(curve.taus * 1e9, curve.values, label=label)
ax.set_xlabel("tau [ns]")
ax.set_ylabel("g2(tau)")
ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig(OUT / "antibunching.png", dpi=120)

"""Matplotlib scripts written next to CLI output by ``--emit-plot``.

The scripts read only the CSV; matplotlib is needed to run them, not to write them.
"""
from __future__ import annotations

_HEAD = '''"""Plot {csv} (written by wqed-scatter)."""
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib.pyplot as plt

path = Path(__file__).with_name("{csv}")
with open(path, newline="") as fh:
    reader = csv.reader(fh)
    header = next(reader)
    rows = [[float(v) for v in row] for row in reader]
cols = {{name: [row[i] for row in rows] for i, name in enumerate(header)}}
'''

_BODY = {
    "spectrum": '''
fig, ax = plt.subplots()
ax.plot(cols["level [1]"], cols["f [GHz]"], "o")
ax.set_xlabel("level")
ax.set_ylabel("f [GHz]")
''',
    "two-level": '''
fig, (a1, a2) = plt.subplots(2, 1, sharex=True)
x = cols["delta_over_gamma10 [1]"]
a1.plot(x, cols["Re_r [1]"], label="Re r")
a1.plot(x, cols["Im_r [1]"], label="Im r")
a1.legend()
a2.plot(x, cols["R [1]"], label="R")
a2.plot(x, cols["T [1]"], label="T")
a2.legend()
a2.set_xlabel("delta / gamma10")
''',
    "three-level": '''
groups = defaultdict(list)
for row in rows:
    groups[row[1]].append((row[0], row[4]))
fig, ax = plt.subplots()
for nc, pts in sorted(groups.items()):
    pts.sort()
    ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f"NinC_rel = {nc:g}")
ax.set_xlabel("deltaP / Gamma10")
ax.set_ylabel("Tp")
ax.legend()
''',
    "g2": '''
groups = defaultdict(list)
for row in rows:
    groups[(row[0], row[1])].append((row[2], row[3]))
fig, ax = plt.subplots()
for (T, bw), pts in groups.items():
    ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f"T = {T:g} mK, BW = {bw:g} MHz")
ax.set_xlabel("tau [ns]")
ax.set_ylabel("g2(tau)")
ax.legend()
''',
}

_TAIL = '''
fig.tight_layout()
fig.savefig(path.with_suffix(".png"), dpi=150)
'''


def render(scenario: str, csv_name: str) -> str:
    return _HEAD.format(csv=csv_name) + _BODY[scenario] + _TAIL

"""
Rectangular 64-point QAM shapes
===============================

32x2, 16x4 and 8x8 carry the same six bits per symbol. Under a 1 degree
rotation the long, thin shapes suffer most, because their outermost points
sit far from the origin and are displaced the furthest.
"""

import math

import matplotlib.pyplot as plt
import numpy as np

from qamber import QamConfig, ber_curve, loss_at

grid = np.arange(0, 40.01, 0.25)
theta = math.pi / 180

fig, ax = plt.subplots(figsize=(6, 4.5))
for mi, mq in ((5, 1), (4, 2), (3, 3)):
    ref = ber_curve(QamConfig(mi, mq, 1.0, 0.0), grid)
    imp = ber_curve(QamConfig(mi, mq, 1.0, theta), grid)
    name = f"{2 ** mi}x{2 ** mq}"
    print(f"{name:5s} loss at 1e-4: {loss_at(ref, imp, 1e-4):.2f} dB")
    (line,) = ax.semilogy(grid, ref.ber, label=name)
    ax.semilogy(grid, imp.ber, "--", color=line.get_color())

ax.set_ylim(1e-7, 1)
ax.set_xlabel("Eb/N0 (dB)")
ax.set_ylabel("conditional BER")
ax.grid(True, which="both", lw=0.3)
ax.legend(title="solid: 0 deg, dashed: 1 deg", fontsize=8)
fig.tight_layout()
fig.savefig("rectangular_qam.png", dpi=120)

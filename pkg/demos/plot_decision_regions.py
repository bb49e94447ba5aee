"""
Bit decision regions of a Gray-coded PAM
========================================

For every bit position the real line splits into alternating regions that
decode to 1 or 0. Their endpoints and the symbol positions follow directly
from the bit index; the brute-force scan of the labelled amplitudes agrees.
"""

import matplotlib.pyplot as plt

from qamber import brute_force_layout, layout

K = 3
for k in range(1, K + 1):
    lay = layout(K, k)
    assert lay == brute_force_layout(K, k)
    print(f"bit {k}: ones {list(lay.regions_one)}")
    print(f"       zeros {list(lay.regions_zero)}")
    print(f"       A1 {list(lay.positions_one)}  A0 {list(lay.positions_zero)}")

# %%
# Draw the three bits of 8-PAM; shaded bands are bit-1 regions.

M = 2**K
fig, axes = plt.subplots(K, 1, figsize=(7, 4), sharex=True)
for ax, k in zip(axes, range(1, K + 1)):
    lay = layout(K, k)
    for lo, hi in lay.regions_one:
        ax.axvspan(max(lo, -M - 1), min(hi, M + 1), color="tab:blue", alpha=0.25)
    ax.plot(lay.positions_one, [0] * len(lay.positions_one), "o", color="tab:blue", label="bit 1")
    ax.plot(lay.positions_zero, [0] * len(lay.positions_zero), "s", color="tab:orange", label="bit 0")
    ax.set_yticks([])
    ax.set_ylabel(f"b{k}")
axes[0].legend(loc="upper right", fontsize=8, ncol=2)
axes[-1].set_xlabel("amplitude / d")
axes[-1].set_xlim(-M - 1, M + 1)
fig.tight_layout()
fig.savefig("decision_regions.png", dpi=120)

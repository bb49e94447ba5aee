"""
Gray labelings of 8-PAM
=======================

The standard reflected Gray code is built by prefixing ``1`` to the previous
sequence and ``0`` to its reversal. Permuting and complementing bit columns
gives other Gray codes. Each of them splits the error rate differently across
bit positions, but the total BER stays the same.
"""

import matplotlib.pyplot as plt
import numpy as np

from qamber import LabelTransform, apply_transform, brgc, generic_labeled_bit_bers, is_gray

g3 = brgc(3)
g3_alt = apply_transform(g3, LabelTransform((3, 2, 1), (0, 1, 0)))
print("standard :", " ".join(g3.as_strings()))
print("swapped  :", " ".join(g3_alt.as_strings()))
print("both Gray:", is_gray(g3, cyclic=True), is_gray(g3_alt, cyclic=True))

# %%
# Error rate carried by each bit position, then the total, at 10 dB.

ebn0 = 10.0
for name, seq in (("standard", g3), ("swapped", g3_alt)):
    per_bit = generic_labeled_bit_bers(seq, ebn0)
    print(f"{name:9s} per-bit {np.round(per_bit, 6)}  total {sum(per_bit):.10f}")

# %%
# Bit columns as images: each row is a bit position, each column an amplitude.

fig, axes = plt.subplots(2, 1, figsize=(6, 3))
for ax, seq, title in zip(axes, (g3, g3_alt), ("standard", "swapped bits 1/3, complemented bit 2")):
    ax.imshow(seq.as_array().T, cmap="Greys", aspect="auto")
    ax.set_yticks([0, 1, 2], ["b1", "b2", "b3"])
    ax.set_xticks(range(8), [f"{a}d" for a in range(-7, 8, 2)])
    ax.set_title(title, fontsize=9)
fig.tight_layout()
fig.savefig("gray_labelings.png", dpi=120)

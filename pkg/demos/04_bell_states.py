"""
Hybrid ion-mode Bell states
===========================

Inputs |l>|alpha, k> (l = g/e, k = even/odd cat) map at t_h onto four
orthonormal, maximally entangled states of the ion and the mode, provided N
is one of the magic values where the half-revival phase is pi/4 mod pi.
"""

import numpy as np

from iontrap_revivals import BELL_LABELS, bell_fidelity, magic_N, nearest_magic
from iontrap_revivals.protocols import bell_overlaps
from _plotting import save

mp = nearest_magic(1, 150)
ov = bell_overlaps(mp, phi=0.3)
print(f"M={mp.M}, N={mp.N:.2f}, eta={mp.eta:.4f}")
print("|<ideal_a | U(t_h) | in_b>|^2 (rows: ideal outputs, cols: inputs)")
labels = [f"({lb.l},{lb.k})" for lb in BELL_LABELS]
print("        " + "  ".join(f"{s:>7}" for s in labels))
for s, row in zip(labels, np.abs(ov) ** 2):
    print(f"{s:>7} " + "  ".join(f"{v:7.4f}" for v in row))

Ms = [magic_N(1, M) for M in range(58, 580, 40)]
fb = [bell_fidelity(1, m.M, phi_samples=20) for m in Ms]
for m, f in zip(Ms, fb):
    print(f"N={m.N:7.2f}  mean Bell fidelity {f:.4f}")


def plot(plt):
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot([m.N for m in Ms], fb, "o-")
    ax.axhline(0.93, ls=":", color="k")
    ax.set_xlabel("N")
    ax.set_ylabel("mean Bell fidelity")
    return fig


save(plot, "bell_fidelity")

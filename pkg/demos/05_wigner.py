"""
Wigner functions: pure cat against the half-revival mode state
==============================================================

Starting from |g>|alpha, 0>, the exact mode state at t_h has two blobs at
+-i alpha like a cat.  The interference fringes near the origin, which a
pure cat displays with amplitude 2, are much weaker.
"""

import math

import numpy as np

from iontrap_revivals import (
    BELL_LABELS,
    ModelParams,
    bell_input,
    cat_state,
    default_truncation,
    evolve_exact,
    nearest_magic,
    reduced_mode_density,
    time_scales,
    wigner,
)
from _plotting import save

mp = nearest_magic(1, 11.77**2)
n_max = default_truncation(mp.N)
alpha = math.sqrt(mp.N)
p = ModelParams(eta=mp.eta, n_max=n_max)
t_h = time_scales(mp.coefficients()).t_h
rho_th = reduced_mode_density(evolve_exact(bell_input(BELL_LABELS[0], alpha, n_max), t_h, p))
psi = cat_state(alpha, 0, n_max).amplitudes
rho_cat = np.outer(psi, psi.conj())

zoom = {name: wigner(rho, 0, 1.0, 81) for name, rho in (("cat", rho_cat), ("t_h", rho_th))}
amp = {k: np.abs(v.values).max() for k, v in zoom.items()}
print(f"alpha={alpha:.3f}: fringe amplitude near 0, pure cat {amp['cat']:.3f}, "
      f"state at t_h {amp['t_h']:.3f}, ratio {amp['t_h'] / amp['cat']:.3f}")

# the wide view under-samples the fringes (period ~ pi / (2 alpha)); the zoom above resolves them
wide = {name: wigner(rho, 0, 1.5 * alpha, 121) for name, rho in (("cat", rho_cat), ("t_h", rho_th))}


def plot(plt):
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    for ax, (name, fld) in zip(axes, wide.items()):
        ax.pcolormesh(fld.re, fld.im, fld.values, cmap="RdBu_r", vmin=-2, vmax=2, shading="auto")
        ax.set_title(name)
        ax.set_aspect("equal")
    return fig


save(plot, "wigner")

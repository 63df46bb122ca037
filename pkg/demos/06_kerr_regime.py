"""
Quadratic (Kerr) regime
=======================

At the second special point omega_n is locally quadratic in n.  The
analytic state then follows a Kerr-type evolution whose time scale
t_q = 1/(sqrt(N) |omega''|) makes the fidelity curves for different N
fall on top of each other.
"""

import math

import numpy as np

from iontrap_revivals import (
    ElectronicState,
    ModelParams,
    approx_state_quadratic,
    average_fidelity_curve,
    coefficients_at,
    default_truncation,
    reduced_mode_density,
    time_scales,
    wigner,
)
from iontrap_revivals.protocols import special_point
from _plotting import save

x2 = special_point(2).x
grid = np.linspace(0, 1, 6)
for N in (100, 200, 400):
    c = coefficients_at(x2, N)
    t_q = time_scales(c).t_q
    p = ModelParams(eta=c.eta, n_max=default_truncation(N))
    curve = average_fidelity_curve(p, N, "quadratic", grid * t_q, samples=200, seed=1)
    print(f"N={N}: t_q={t_q:.1f}/Omega  F(t/t_q) = " + " ".join(f"{v:.3f}" for v in curve.mean))

N = 200
c = coefficients_at(x2, N)
t_q = time_scales(c).t_q
el = ElectronicState.from_d(1.0, 0.0, 0.0)
fields = []
for f in (0.25, 0.5, 0.75):
    s = approx_state_quadratic(el, math.sqrt(N), c, f * t_q)
    fields.append((f, wigner(reduced_mode_density(s), 0, 1.3 * math.sqrt(N), 101)))
    print(f"t = {f} t_q: min W = {fields[-1][1].values.min():+.3f} (negativity from Kerr squeezing)")


def plot(plt):
    fig, axes = plt.subplots(1, 3, figsize=(12, 4))
    for ax, (f, fld) in zip(axes, fields):
        ax.pcolormesh(fld.re, fld.im, fld.values, cmap="RdBu_r", vmin=-1, vmax=1, shading="auto")
        ax.set_title(f"t = {f} t_q")
        ax.set_aspect("equal")
    return fig


save(plot, "kerr")

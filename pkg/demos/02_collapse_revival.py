"""
Collapse and revival of the population inversion
================================================

Start in |e>|alpha> with |alpha|^2 = N and tune eta so that 4 eta^2 N sits on
the first special point.  The inversion collapses, stays flat, and revives
almost completely at t_r.  The envelope formula tracks the exact curve.
"""


import numpy as np

from iontrap_revivals import ModelParams, coefficients_at, default_truncation, inversion_curve, time_scales
from iontrap_revivals.protocols import special_point
from _plotting import save

x1 = special_point(1).x
curves = {}
for N in (100, 400):
    c = coefficients_at(x1, N)
    t_r = time_scales(c).t_r
    p = ModelParams(eta=c.eta, n_max=default_truncation(N))
    t, w_exact, w_approx = inversion_curve(p, N, np.arange(0, 1.2 * t_r, 0.5))
    curves[N] = (t / t_r, w_exact, w_approx)
    collapse = (t > 0.2 * t_r) & (t < 0.8 * t_r)
    revival = (t > 0.95 * t_r) & (t < 1.05 * t_r)
    print(f"N={N}: eta={c.eta:.4f}, t_r={t_r:.1f}/Omega, "
          f"max|W| in collapse={np.abs(w_exact[collapse]).max():.1e}, "
          f"revival peak={w_exact[revival].max():.3f}, "
          f"max|W_exact - W_approx| before 0.4 t_r={np.abs(w_exact - w_approx)[t < 0.4 * t_r].max():.4f}")


def plot(plt):
    fig, axes = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
    for ax, (N, (s, we, wa)) in zip(axes, curves.items()):
        ax.plot(s, we, lw=0.6, label="exact")
        ax.plot(s, wa, lw=0.6, ls="--", label="envelope formula")
        ax.set_ylabel(f"W(t), N={N}")
    axes[0].legend()
    axes[1].set_xlabel("t / t_r")
    return fig


save(plot, "collapse_revival")

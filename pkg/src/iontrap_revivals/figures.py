"""Data behind the special-point table and the figures, as :class:`~.tables.Table` objects."""

from __future__ import annotations

import math

import numpy as np

from .analysis import _WIGNER_MARGIN, average_fidelity_curve, inversion_curve, wigner
from .approx import approx_state_quadratic, coefficients_at, time_scales
from .dynamics import ModelParams, evolve_exact
from .hilbert import (
    ElectronicState,
    cat_state,
    default_truncation,
    reduced_mode_density,
)
from .protocols import bell_fidelity, bell_input, magic_N, nearest_magic, special_point, BELL_LABELS
from .specfun import find_special_points
from .tables import Table

__all__ = ["FIGURES", "FIG4_PRESETS", "table1", "make_figure"]

#: Two presets for the half-revival Wigner figure, alpha = 11.77 and N = 184.42;
#: both are offered, each snapped to the nearest magic N at x_1.
FIG4_PRESETS = {"alpha": 11.77**2, "N": 184.42}

TABLE1_TOLERANCE_NOTE = "x_j to 5 significant figures; derivatives to printed precision; printed zeros < 1e-6"


def table1(max_x: float = 70.0) -> Table:
    pts = find_special_points(max_x)
    rows = [(sp.j, sp.x, *sp.h_derivs) for sp in pts]
    return Table(
        name="table1",
        columns=["j", "x_j", "h", "h1", "h2", "h3", "h4"],
        rows=rows,
        meta={"max_x": max_x, "scan_step": 0.05, "bisection_width": 1e-12,
              "zero_kinds": "/".join(sp.kind for sp in pts),
              "tolerances": TABLE1_TOLERANCE_NOTE},
    )


def _params(x_j: float, N: float, freq_method: str, omega: float = 1.0) -> ModelParams:
    eta = math.sqrt(x_j / (4 * N))
    return ModelParams(eta=eta, n_max=default_truncation(N), omega=omega, freq_method=freq_method)


def fig2(N_values=(100, 400, 1600), samples=1000, seed=0, points=41, tmax=2.0,
         freq_method="laguerre_exact") -> Table:
    """Average linear-regime fidelity against ``t / t_h`` at x_1."""
    x1 = special_point(1).x
    rows = []
    for N in N_values:
        p = _params(x1, N, freq_method)
        t_h = time_scales(coefficients_at(x1, N)).t_h
        grid = np.linspace(0, tmax, points)
        curve = average_fidelity_curve(p, N, "linear", grid * t_h, samples, seed)
        rows += [(N, p.eta, g, t, m, e) for g, t, m, e in zip(grid, curve.times, curve.mean, curve.stderr)]
    return Table(
        "fig2", ["N", "eta", "t_over_th", "t", "F_mean", "F_stderr"], rows,
        meta={"x_j": x1, "samples": samples, "seed": seed, "freq_method": freq_method},
        units={"t": "1/Omega"},
    )


def fig3(N_values=(100, 400), tmax=1.2, dt=0.5, freq_method="laguerre_exact") -> Table:
    """Exact and approximate population inversion over ``[0, tmax * t_r]``."""
    x1 = special_point(1).x
    rows = []
    for N in N_values:
        p = _params(x1, N, freq_method)
        t_r = time_scales(coefficients_at(x1, N)).t_r
        times = np.arange(0, tmax * t_r + dt / 2, dt)
        t, w_exact, w_approx = inversion_curve(p, N, times)
        rows += [(N, p.eta, ti, ti / t_r, we, wa) for ti, we, wa in zip(t, w_exact, w_approx)]
    return Table(
        "fig3", ["N", "eta", "t", "t_over_tr", "W_exact", "W_approx"], rows,
        meta={"x_j": x1, "dt": dt, "freq_method": freq_method, "initial_state": "|e>|sqrt(N)>"},
        units={"t": "1/Omega"},
    )


def _padded(rho: np.ndarray, reach: float) -> np.ndarray:
    """Zero-pad ``rho`` so a grid reaching ``|beta| = reach`` stays inside the safe radius."""
    need = int(math.ceil(max(0.0, reach - _WIGNER_MARGIN) ** 2)) + 1
    if need <= rho.shape[0]:
        return rho
    out = np.zeros((need, need), dtype=complex)
    out[: rho.shape[0], : rho.shape[0]] = rho
    return out


def _field_rows(label, field):
    return [
        (label, b.real, b.imag, w)
        for b, w in zip(field.betas.ravel(), field.values.ravel())
    ]


def fig4(preset="alpha", resolution=201, half_width=None, freq_method="laguerre_exact") -> Table:
    """Wigner functions of the even cat and of the mode at ``t_h`` from ``|g>|alpha,0>``."""
    mp = nearest_magic(1, FIG4_PRESETS[preset])
    n_max = default_truncation(mp.N)
    alpha = math.sqrt(mp.N)
    hw = 1.5 * alpha if half_width is None else half_width
    cat = cat_state(alpha, 0, n_max).amplitudes
    rho_cat = np.outer(cat, cat.conj())
    p = ModelParams(eta=mp.eta, n_max=n_max, freq_method=freq_method)
    t_h = time_scales(mp.coefficients()).t_h
    out = evolve_exact(bell_input(BELL_LABELS[0], alpha, n_max), t_h, p)
    rho_th = reduced_mode_density(out)
    reach = hw * math.sqrt(2)
    rows = _field_rows("cat", wigner(_padded(rho_cat, reach), 0, hw, resolution))
    rows += _field_rows("t_h", wigner(_padded(rho_th, reach), 0, hw, resolution))
    return Table(
        "fig4", ["panel", "re_beta", "im_beta", "W"], rows,
        meta={"preset": preset, "M": mp.M, "N": mp.N, "alpha": alpha, "eta": mp.eta,
              "t_h": t_h, "resolution": resolution, "half_width": hw, "freq_method": freq_method},
    )


def fig5(j=1, N_min=80.0, N_max=800.0, stride=1, phi_samples=50, freq_method="laguerre_exact",
         M_values=None) -> Table:
    """Bell fidelity at magic N."""
    if M_values is None:
        lo, hi = nearest_magic(j, N_min), nearest_magic(j, N_max)
        if lo.N < N_min:
            lo = magic_N(j, lo.M + 1)
        M_values = range(lo.M, hi.M + 1, stride)
    rows = []
    for M in M_values:
        mp = magic_N(j, M)
        rows.append((M, mp.N, mp.eta, bell_fidelity(j, M, phi_samples, freq_method)))
    return Table(
        "fig5", ["M", "N", "eta", "F_B"], rows,
        meta={"j": j, "phi_samples": phi_samples, "freq_method": freq_method,
              "normalization": "mean over the four Bell labels"},
    )


def fig6(N_values=(100, 200, 400), samples=1000, seed=0, points=21, tmax=1.0,
         freq_method="laguerre_exact") -> Table:
    """Average quadratic-regime fidelity against ``t / t_q`` at x_2."""
    x2 = special_point(2).x
    rows = []
    for N in N_values:
        p = _params(x2, N, freq_method)
        t_q = time_scales(coefficients_at(x2, N)).t_q
        grid = np.linspace(0, tmax, points)
        curve = average_fidelity_curve(p, N, "quadratic", grid * t_q, samples, seed)
        rows += [(N, p.eta, g, t, m, e) for g, t, m, e in zip(grid, curve.times, curve.mean, curve.stderr)]
    return Table(
        "fig6", ["N", "eta", "t_over_tq", "t", "F_mean", "F_stderr"], rows,
        meta={"x_j": x2, "samples": samples, "seed": seed, "freq_method": freq_method},
        units={"t": "1/Omega"},
    )


def fig7(N=200.0, fractions=(0.25, 0.5, 0.75), resolution=121, half_width=None) -> Table:
    """Wigner function of the Kerr-evolved mode for ``d+ = 1``."""
    x2 = special_point(2).x
    c = coefficients_at(x2, N)
    t_q = time_scales(c).t_q
    n_max = default_truncation(N)
    alpha = math.sqrt(N)
    el = ElectronicState.from_d(1.0, 0.0, 0.0)
    hw = 1.3 * alpha if half_width is None else half_width
    rows = []
    for f in fractions:
        s = approx_state_quadratic(el, alpha, c, f * t_q, n_max)
        rho = _padded(reduced_mode_density(s), hw * math.sqrt(2))
        rows += _field_rows(f, wigner(rho, 0, hw, resolution))
    return Table(
        "fig7", ["t_over_tq", "re_beta", "im_beta", "W"], rows,
        meta={"N": N, "eta": c.eta, "t_q": t_q, "resolution": resolution, "half_width": hw},
    )


FIGURES = {"fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5, "fig6": fig6, "fig7": fig7}


def make_figure(name: str, **kwargs) -> Table:
    try:
        fn = FIGURES[name]
    except KeyError:
        raise ValueError(f"unknown figure {name!r}; choose from {sorted(FIGURES)}") from None
    return fn(**kwargs)

"""
Schroedinger cats at half the revival time
==========================================

At t_h = t_r/2 the two mode branches sit at +-i alpha and the ion factorizes.
Choosing the initial ion state appropriately leaves the mode in an even or
odd cat, with the ion in a known pure state.
"""

import math

import numpy as np

from iontrap_revivals import (
    ModelParams,
    cat_prep_initial,
    coefficients_at,
    default_truncation,
    evolve_exact,
    purity,
    reduced_electronic_density,
    reduced_mode_density,
    time_scales,
)
from iontrap_revivals.protocols import cat_target, special_point

N = 248.79
c = coefficients_at(special_point(1).x, N)
t_h = time_scales(c).t_h
n_max = default_truncation(N)
alpha = math.sqrt(N)
p = ModelParams(eta=c.eta, n_max=n_max)
print(f"eta = {c.eta:.4f}, t_h = {t_h:.1f}/Omega, sign of omega' = {math.copysign(1, c.omega1):+.0f}")

for sign, name in ((1, "even"), (-1, "odd")):
    out = evolve_exact(cat_prep_initial(sign, alpha, c, n_max), t_h, p)
    target = cat_target(sign, alpha, c, n_max).branch(0).amplitudes
    target = target / np.linalg.norm(target)
    rho = reduced_mode_density(out)
    f = float(np.real(target.conj() @ rho @ target))
    par = float(np.real(np.sum(np.diag(rho) * (-1.0) ** np.arange(n_max + 1))))
    print(f"{name} cat: mode fidelity {f:.4f}, ion purity {purity(reduced_electronic_density(out)):.5f}, "
          f"mode parity {par:+.4f}")

"""
Special points of h(x) = J1(sqrt x)
===================================

The ion-trap eigenfrequencies are, to a very good approximation,
omega_n = Omega h(4 eta^2 n).  Where h'' vanishes the frequencies are
locally linear in n, where h''' vanishes they are locally quadratic.
"""

import numpy as np

from iontrap_revivals import find_special_points, h_derivative
from _plotting import save

points = find_special_points(70.0)
print(" j   kind        x_j          h           h'          h''         h'''        h''''")
for sp in points:
    print(f" {sp.j}   {sp.kind:<9} {sp.x:10.6f} " + " ".join(f"{v:11.4e}" for v in sp.h_derivs))

# each zero is a genuine sign change of the relevant derivative
for sp in points:
    order = 2 if sp.kind == "linear" else 3
    left, right = h_derivative(order, sp.x - 1e-3), h_derivative(order, sp.x + 1e-3)
    print(f"x_{sp.j}: h^({order}) changes sign {left:+.2e} -> {right:+.2e}")


def plot(plt):
    x = np.linspace(0.05, 70, 1400)
    fig, ax = plt.subplots(figsize=(7, 4))
    for k in range(4):
        y = h_derivative(k, x)
        ax.plot(x, y / np.max(np.abs(y)), label=f"h^({k}) (scaled)")
    for sp in points:
        ax.axvline(sp.x, color="k", lw=0.5, ls=":")
    ax.axhline(0, color="k", lw=0.5)
    ax.set_xlabel("x")
    ax.legend()
    return fig


save(plot, "special_points")

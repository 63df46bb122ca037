"""Special-function kernels for the ion-trap eigenfrequencies.

The eigenfrequencies are governed by associated Laguerre polynomials
``L_{n-1}^{(1)}(eta**2)`` and, for small Lamb-Dicke parameter, by the scaled
Bessel function ``h(x) = J1(sqrt(x))``.  This module evaluates both, the
derivatives of ``h`` up to fourth order, and locates the points where the
second (linear regime) or third (quadratic regime) derivative of ``h``
vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
from scipy import special

__all__ = [
    "LAGUERRE_MAX_DEGREE",
    "SpecialPoint",
    "laguerre_assoc",
    "laguerre_table",
    "bessel_j1",
    "h_derivative",
    "h_derivatives",
    "find_special_points",
]

#: Largest degree accepted by the Laguerre recurrence.  Far above any
#: truncation used here (n_max ~ 2000), low enough to keep x = eta**2 small
#: arguments in the stable regime of the forward recurrence.
LAGUERRE_MAX_DEGREE = 100_000

SCAN_STEP = 0.05
BISECT_WIDTH = 1e-12


def laguerre_table(n_max: int, k: int, x: float) -> np.ndarray:
    """Return ``[L_0^{(k)}(x), ..., L_{n_max}^{(k)}(x)]`` by forward recurrence."""
    if n_max < 0:
        raise ValueError("degree must be non-negative")
    if n_max > LAGUERRE_MAX_DEGREE:
        raise ValueError(
            f"unsupported Laguerre degree {n_max} (cap {LAGUERRE_MAX_DEGREE})"
        )
    if k < 0:
        raise ValueError("order must be non-negative")
    out = np.empty(n_max + 1)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1.0 + k - x
    for m in range(1, n_max):
        out[m + 1] = ((2 * m + 1 + k - x) * out[m] - (m + k) * out[m - 1]) / (m + 1)
    return out


def laguerre_assoc(n: int, k: int, x: float) -> float:
    """Associated Laguerre polynomial ``L_n^{(k)}(x)``.

    Evaluated with the three-term recurrence in ``n`` at fixed order ``k``.
    Raises ``ValueError`` for degrees above :data:`LAGUERRE_MAX_DEGREE`.
    """
    return float(laguerre_table(n, k, x)[n])


def bessel_j1(x):
    """Bessel function of the first kind, order one."""
    return special.j1(x)


def _h_taylor(k: int, x):
    # Series of h(x) = J1(sqrt x) = sum_m (-1)^m x^(m+1/2) / (2^(2m+1) m! (m+1)!)
    # differentiated termwise; only used near x = 0 where the closed form
    # loses accuracy through cancellation.
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for m in range(30):
        coeff = (-1) ** m / (2 ** (2 * m + 1) * special.factorial(m) * special.factorial(m + 1))
        power = m + 0.5
        falling = 1.0
        for q in range(k):
            falling *= power - q
        total = total + coeff * falling * x ** (power - k)
    return total


def h_derivative(k: int, x):
    """k-th derivative of ``h(x) = J1(sqrt(x))`` with respect to ``x``.

    Uses ``d/dx [x^(-v/2) J_v(sqrt x)] = -1/2 x^(-(v+1)/2) J_{v+1}(sqrt x)``
    together with the Leibniz rule applied to ``h = x^(1/2) * x^(-1/2) J1``.
    Valid for ``k`` in 0..4 and ``x > 0``.
    """
    if k not in range(5):
        raise ValueError(f"invalid derivative order {k}; expected 0..4")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("h derivatives require x > 0")
    s = np.sqrt(x)
    total = np.zeros_like(x)
    for i in range(k + 1):
        # i-th derivative of x^(1/2)
        falling = 1.0
        for q in range(i):
            falling *= 0.5 - q
        order = 1 + k - i
        g = special.jv(order, s) / s**order
        total = total + comb(k, i) * falling * x ** (0.5 - i) * (-0.5) ** (k - i) * g
    small = x < 0.5
    if np.any(small):
        total = np.where(small, _h_taylor(k, np.where(small, x, 1.0)), total)
    return total if total.ndim else float(total)


def h_derivatives(x: float) -> tuple[float, ...]:
    """``(h, h', h'', h''', h'''')`` at ``x``."""
    return tuple(float(h_derivative(k, x)) for k in range(5))


@dataclass(frozen=True)
class SpecialPoint:
    """A zero of ``h''`` (linear regime) or ``h'''`` (quadratic regime)."""

    j: int
    x: float
    h_derivs: tuple[float, ...]
    kind: str  # "linear" or "quadratic"


def _bisect(f, a: float, b: float, width: float = BISECT_WIDTH) -> float:
    fa = f(a)
    while b - a > width:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def find_special_points(max_x: float, step: float = SCAN_STEP) -> list[SpecialPoint]:
    """Zeros of ``h''`` and ``h'''`` on ``(0, max_x]`` in increasing order.

    The derivatives are scanned on a uniform grid and each sign change is
    polished by bisection.  Zeros of ``h''`` are tagged ``"linear"`` and zeros
    of ``h'''`` ``"quadratic"``; ``j`` numbers the merged list from 1.
    """
    grid = np.arange(step, max_x + 0.5 * step, step)
    grid = grid[grid <= max_x]
    if grid.size < 2:
        return []
    roots = []
    for order, kind in ((2, "linear"), (3, "quadratic")):
        vals = h_derivative(order, grid)
        idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        for i in idx:
            x = _bisect(lambda t: h_derivative(order, t), grid[i], grid[i + 1])
            roots.append((x, kind))
    roots.sort()
    return [
        SpecialPoint(j=j, x=x, h_derivs=h_derivatives(x), kind=kind)
        for j, (x, kind) in enumerate(roots, start=1)
    ]

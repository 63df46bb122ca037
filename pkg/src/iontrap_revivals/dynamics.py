"""Eigenfrequencies and exact propagation of the ion-trap interaction.

The interaction conserves ``I = a^dagger a + sigma_+ sigma_-`` and splits
into 2x2 blocks on ``{|e, n-1>, |g, n>}`` with off-diagonal element
``omega_n``.  Propagation is a per-block rotation, so it is exactly unitary
and costs O(n_max) per time.

At the top of the truncation ``|e, n_max>`` would couple to ``|g, n_max+1>``,
which is not represented; that component is left unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hilbert import JointState
from .specfun import bessel_j1, laguerre_table

__all__ = [
    "FREQ_METHODS",
    "ModelParams",
    "eigenfrequency",
    "frequency_table",
    "evolve_exact",
    "propagate",
    "population_inversion",
    "expectation_I",
]

FREQ_METHODS = ("laguerre_exact", "bessel_approx")


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``omega`` (sets the time unit), Lamb-Dicke ``eta``, cutoff ``n_max``."""

    eta: float
    n_max: int
    omega: float = 1.0
    freq_method: str = "laguerre_exact"

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        if not 0 < self.eta < 1:
            raise ValueError("eta must lie in (0, 1)")
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")
        if self.freq_method not in FREQ_METHODS:
            raise ValueError(f"unknown freq_method {self.freq_method!r}")


@lru_cache(maxsize=64)
def _table(eta: float, n_max: int, omega: float, method: str) -> np.ndarray:
    n = np.arange(1, n_max + 1)
    out = np.zeros(n_max + 1)
    if method == "laguerre_exact":
        lag = laguerre_table(n_max - 1, 1, eta * eta)
        out[1:] = omega * eta * math.exp(-eta * eta / 2) * lag / np.sqrt(n)
    else:
        out[1:] = omega * bessel_j1(2 * eta * np.sqrt(n))
    out.setflags(write=False)
    return out


def frequency_table(p: ModelParams) -> np.ndarray:
    """``omega_n`` for n = 0..n_max; entry 0 is a placeholder (the singlet)."""
    return _table(p.eta, p.n_max, p.omega, p.freq_method)


def eigenfrequency(n: int, p: ModelParams) -> float:
    """Block frequency ``omega_n`` for ``1 <= n <= n_max``."""
    if n < 1:
        raise ValueError("omega_n is defined for n >= 1; |g,0> is an uncoupled singlet")
    if n > p.n_max:
        raise ValueError(f"n={n} exceeds truncation n_max={p.n_max}")
    return float(frequency_table(p)[n])


def _check(s: JointState, p: ModelParams) -> None:
    if s.n_max != p.n_max:
        raise ValueError(f"state truncation {s.n_max} does not match params {p.n_max}")


def propagate(s0: JointState, times, p: ModelParams) -> np.ndarray:
    """Amplitudes at each of ``times``, shape ``(len(times), 2, n_max + 1)``."""
    _check(s0, p)
    t = np.atleast_1d(np.asarray(times, dtype=float))[:, None]
    w = frequency_table(p)[1:]
    c = np.cos(w * t)
    s = -1j * np.sin(w * t)
    g, e = s0.amplitudes
    out = np.empty((t.shape[0], 2, p.n_max + 1), dtype=complex)
    # doublet n: (|e, n-1>, |g, n>)
    e_lo, g_hi = e[:-1], g[1:]
    out[:, 1, :-1] = c * e_lo + s * g_hi
    out[:, 0, 1:] = s * e_lo + c * g_hi
    out[:, 0, 0] = g[0]
    out[:, 1, -1] = e[-1]
    return out


def evolve_exact(s0: JointState, t: float, p: ModelParams) -> JointState:
    """Exact state at time ``t`` (any sign) starting from ``s0``."""
    return JointState(propagate(s0, [t], p)[0])


def population_inversion(s) -> float | np.ndarray:
    """``<sigma_z> = P_e - P_g``; accepts a state or a stack of amplitude arrays."""
    a = s.amplitudes if isinstance(s, JointState) else np.asarray(s)
    pops = np.sum(np.abs(a) ** 2, axis=-1)
    w = (pops[..., 1] - pops[..., 0]) / (pops[..., 0] + pops[..., 1])
    return float(w) if np.ndim(w) == 0 else w


def expectation_I(s) -> float:
    """Mean excitation number ``<a^dagger a + sigma_+ sigma_->``."""
    a = s.amplitudes if isinstance(s, JointState) else np.asarray(s)
    n = np.arange(a.shape[-1])
    p = np.abs(a) ** 2
    return float((p[0] @ n + p[1] @ (n + 1)) / p.sum())

"""Phase-space pictures and ensemble averages built on the exact dynamics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special

from .approx import (
    RegimeError,
    RegimeWarning,
    W_approx_linear,
    approx_state_linear,
    approx_state_quadratic,
    regime_coefficients,
    time_scales,
)
from .dynamics import ModelParams, population_inversion, propagate
from .hilbert import (
    EXCITED,
    ElectronicState,
    TruncationError,
    coherent_state,
    joint_product,
)

__all__ = [
    "WignerField",
    "wigner",
    "wigner_at",
    "FidelityCurve",
    "average_fidelity_curve",
    "inversion_curve",
]

# Beyond sqrt(n_max + 1) + margin every Fock state of the truncation has a
# Wigner function below ~exp(-2 margin^2).
_WIGNER_MARGIN = 10.0
_CHUNK_ELEMENTS = 2_000_000


@dataclass(frozen=True)
class WignerField:
    """``values[i, j] = W(re[j] + 1j * im[i])``, normalized so ``max |W| <= 2``."""

    re: np.ndarray
    im: np.ndarray
    values: np.ndarray

    @property
    def betas(self) -> np.ndarray:
        return self.re[None, :] + 1j * self.im[:, None]

    def integral(self) -> float:
        """Riemann sum of ``W d^2 beta / pi``; 1 for a state inside the grid."""
        dx = self.re[1] - self.re[0]
        dy = self.im[1] - self.im[0]
        return float(self.values.sum() * dx * dy / math.pi)


def _laguerre_functions_start(x: np.ndarray, dim: int) -> np.ndarray:
    # l_0^{(d)}(x) = x^{d/2} e^{-x/2} / sqrt(d!)
    d = np.arange(dim)[:, None]
    with np.errstate(divide="ignore"):
        logx = np.log(x)[None, :]
    power = np.where(d > 0, 0.5 * d * np.where(np.isfinite(logx), logx, -1e300), 0.0)
    log_v = power - 0.5 * x[None, :] - 0.5 * special.gammaln(d + 1)
    return np.exp(log_v)


def _wigner_chunk(rho: np.ndarray, beta: np.ndarray) -> np.ndarray:
    dim = rho.shape[0]
    x = 4.0 * np.abs(beta) ** 2
    theta = np.angle(beta)
    d = np.arange(dim)[:, None]
    cos_d = np.cos(d * theta[None, :])
    sin_d = np.sin(d * theta[None, :])
    weight = np.where(np.arange(dim) > 0, 2.0, 1.0)

    prev = np.zeros((dim, beta.size))
    cur = _laguerre_functions_start(x, dim)
    out = np.zeros(beta.size)
    df = np.arange(dim, dtype=float)
    for m in range(dim):
        width = dim - m
        r = rho[m, m : m + width] * weight[:width]
        ell = cur[:width]
        term = r.real @ (cos_d[:width] * ell) - r.imag @ (sin_d[:width] * ell)
        out += term if m % 2 == 0 else -term
        if m == dim - 1:
            break
        # normalized Laguerre recurrence in m at fixed d
        dd = df[: width - 1, None]
        nxt = (
            (2 * m + 1 + dd - x[None, :]) * cur[: width - 1]
            - np.sqrt(m * (m + dd)) * prev[: width - 1]
        ) / np.sqrt((m + 1) * (m + 1 + dd))
        prev, cur = cur, nxt
    return 2.0 * out


def wigner_at(rho: np.ndarray, beta) -> np.ndarray:
    """``W(beta) = 2 Tr[D(beta) P D(-beta) rho]`` at arbitrary points.

    ``P`` is the parity operator.  Matrix elements of the displacement are
    evaluated through normalized associated Laguerre functions, which stay
    bounded by one and so neither overflow nor lose the small-amplitude tail.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("rho must be a square matrix")
    beta = np.asarray(beta, dtype=complex)
    flat = beta.ravel()
    limit = math.sqrt(rho.shape[0]) + _WIGNER_MARGIN
    far = np.abs(flat) > limit
    if np.any(far):
        worst = flat[np.argmax(np.abs(flat))]
        raise TruncationError(
            f"beta={worst:.4g} lies beyond the truncation-safe radius {limit:.4g}"
        )
    out = np.empty(flat.size)
    step = max(1, _CHUNK_ELEMENTS // rho.shape[0])
    for start in range(0, flat.size, step):
        out[start : start + step] = _wigner_chunk(rho, flat[start : start + step])
    return out.reshape(beta.shape)


def wigner(
    rho: np.ndarray,
    center: complex = 0.0,
    half_width: float = 3.0,
    resolution: int = 201,
) -> WignerField:
    """Wigner function on a square grid ``center + [-hw, hw]^2``."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2 points per axis")
    re = complex(center).real + np.linspace(-half_width, half_width, resolution)
    im = complex(center).imag + np.linspace(-half_width, half_width, resolution)
    betas = re[None, :] + 1j * im[:, None]
    return WignerField(re=re, im=im, values=wigner_at(rho, betas))


@dataclass(frozen=True)
class FidelityCurve:
    times: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    samples: int
    seed: int


def average_fidelity_curve(
    p: ModelParams,
    N: float,
    regime: str,
    times,
    samples: int = 1000,
    seed: int = 0,
) -> FidelityCurve:
    """Mean fidelity between exact and approximate states over random inputs.

    Each sample draws a Haar-random electronic state and a uniform coherent
    phase with ``|alpha|^2 = N``; the generator is seeded so repeated calls
    give identical tables.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    if regime not in ("linear", "quadratic"):
        raise ValueError(f"unknown regime {regime!r}")
    c = regime_coefficients(p, N)
    ts = time_scales(c)
    if regime == "linear" and ts.t_r is None:
        raise RegimeError("omega_N' vanishes; linear regime inapplicable")
    if regime == "quadratic" and ts.t_q is None:
        raise RegimeError("omega_N'' vanishes; quadratic regime inapplicable")
    build = approx_state_linear if regime == "linear" else approx_state_quadratic
    times = np.asarray(times, dtype=float)
    rng = np.random.default_rng(seed)
    fids = np.empty((samples, times.size))
    r = math.sqrt(N)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        for i in range(samples):
            el = ElectronicState.random(rng)
            alpha = r * np.exp(1j * rng.uniform(0.0, 2 * math.pi))
            s0 = joint_product(el, coherent_state(alpha, p.n_max))
            exact = propagate(s0, times, p)
            for q, t in enumerate(times):
                approx = build(el, alpha, c, t, p.n_max).amplitudes
                fids[i, q] = abs(np.vdot(exact[q], approx)) ** 2
    stderr = fids.std(axis=0, ddof=1) / math.sqrt(samples) if samples > 1 else np.zeros(times.size)
    return FidelityCurve(times, fids.mean(axis=0), stderr, samples, seed)


def inversion_curve(p: ModelParams, N: float, times) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(t, W_exact, W_approx)`` for the initial state ``|e>|sqrt N>``."""
    times = np.asarray(times, dtype=float)
    c = regime_coefficients(p, N)
    s0 = joint_product(EXCITED, coherent_state(math.sqrt(N), p.n_max))
    w_exact = np.empty(times.size)
    step = max(1, _CHUNK_ELEMENTS // (2 * (p.n_max + 1)))
    for start in range(0, times.size, step):
        chunk = propagate(s0, times[start : start + step], p)
        w_exact[start : start + step] = population_inversion(chunk)
    return times, w_exact, W_approx_linear(c, N, times)

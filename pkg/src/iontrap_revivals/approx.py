"""Large-coherent-state approximations of the ion-trap dynamics.

The eigenfrequencies are Taylor-expanded around the mean phonon number ``N``
in the Bessel picture ``omega_n = Omega h(4 eta^2 n)``.  When ``h''`` vanishes
the mode operators are linear in ``a^dagger a`` and each branch stays a
coherent state rotating at ``omega_N'``; when ``h'''`` vanishes they are
quadratic (Kerr-type).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dynamics import ModelParams
from .hilbert import (
    ElectronicState,
    JointState,
    coherent_amplitudes,
    coherent_state,
    default_truncation,
)
from .specfun import h_derivatives

__all__ = [
    "RegimeError",
    "RegimeWarning",
    "MAX_X",
    "RegimeCoeffs",
    "TimeScales",
    "regime_coefficients",
    "coefficients_at",
    "time_scales",
    "chi_states_linear",
    "approx_state_linear",
    "F_functions_linear",
    "W_approx_linear",
    "approx_state_quadratic",
]

MAX_X = 70.0
# derivatives of h below this are treated as vanishing when forming time scales
_ZERO = 1e-12


class RegimeError(ValueError):
    """The requested approximation does not apply at these parameters."""


class RegimeWarning(UserWarning):
    """An approximate state was requested outside its validity window."""


@dataclass(frozen=True)
class RegimeCoeffs:
    """Taylor data of ``omega_n`` around ``n = N``.

    ``derivs[k]`` is the k-th derivative of ``omega_n`` with respect to ``n``
    (``derivs[0] = omega_N``); ``h_derivs`` the matching derivatives of ``h``
    at ``x = 4 eta^2 N``.
    """

    N: float
    eta: float
    omega: float
    x: float
    h_derivs: tuple[float, ...]
    derivs: tuple[float, ...]

    @property
    def omega_N(self) -> float:
        return self.derivs[0]

    @property
    def omega1(self) -> float:
        return self.derivs[1]

    @property
    def omega2(self) -> float:
        return self.derivs[2]

    @property
    def omega3(self) -> float:
        return self.derivs[3]

    @property
    def omega4(self) -> float:
        return self.derivs[4]

    def varphi(self, l: int) -> float:
        return self.omega_N + (l - self.N) * self.omega1

    def delta(self, l: int) -> float:
        return self.varphi(l) + 0.5 * self.omega2 * (l - self.N) ** 2

    def Delta(self, l: int) -> float:
        return self.omega1 + (l - self.N) * self.omega2

    @property
    def alpha(self) -> float:
        """Real coherent amplitude ``sqrt(N)``."""
        return math.sqrt(self.N)


@dataclass(frozen=True)
class TimeScales:
    """Characteristic times; ``None`` marks a scale whose derivative vanishes."""

    t_r: float | None
    t_h: float | None
    t2: float | None
    t_q: float | None
    linear_valid_until: float | None
    quadratic_valid_until: float | None


def regime_coefficients(p: ModelParams, N: float) -> RegimeCoeffs:
    """Taylor coefficients of ``omega_n`` at mean phonon number ``N``."""
    if not N > 0:
        raise RegimeError("mean phonon number must be positive")
    x = 4 * p.eta**2 * N
    if x > MAX_X:
        raise RegimeError(f"x = 4 eta^2 N = {x:.4g} exceeds {MAX_X}")
    hd = h_derivatives(x)
    scale = 4 * p.eta**2
    derivs = tuple(p.omega * scale**k * hd[k] for k in range(5))
    return RegimeCoeffs(N=N, eta=p.eta, omega=p.omega, x=x, h_derivs=hd, derivs=derivs)


def coefficients_at(x_j: float, N: float, omega: float = 1.0) -> RegimeCoeffs:
    """Coefficients with ``eta`` chosen so that ``4 eta^2 N = x_j``."""
    eta = math.sqrt(x_j / (4 * N))
    return regime_coefficients(ModelParams(eta=eta, n_max=1, omega=omega), N)


def time_scales(c: RegimeCoeffs) -> TimeScales:
    h1, h2, h3, h4 = (abs(v) for v in c.h_derivs[1:])
    sqrt_n = math.sqrt(c.N)
    t_r = t_h = lin = None
    if h1 > _ZERO:
        t_r = math.pi / abs(c.omega1)
        t_h = t_r / 2
        if h3 > _ZERO:
            lin = h1 * sqrt_n / (4 * c.x**2 * h3) * t_r
        else:
            lin = math.inf
    t2 = t_q = quad = None
    if h2 > _ZERO:
        t2 = 2 * math.pi / abs(c.omega2)
        t_q = 1 / (sqrt_n * abs(c.omega2))
        if h4 > _ZERO:
            quad = 3 * h2 / (8 * math.pi * h4 * c.x**2) * t2
        else:
            quad = math.inf
    return TimeScales(t_r, t_h, t2, t_q, lin, quad)


def _warn_beyond(t, limit, what):
    if limit is not None and np.max(np.abs(t)) > limit:
        warnings.warn(
            f"t={np.max(np.abs(t)):.4g} beyond the {what} validity window {limit:.4g}",
            RegimeWarning,
            stacklevel=3,
        )


def chi_states_linear(
    el0: ElectronicState, alpha: complex, c: RegimeCoeffs, t: float, n_max: int
) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized mode branches ``(chi_0(t), chi_1(t))`` of the linear regime."""
    phi = float(np.angle(alpha))
    dp, dm = el0.d_amplitudes(phi)
    rot = np.exp(-1j * c.omega1 * t)
    ket_minus = coherent_amplitudes(alpha * rot, n_max)
    ket_plus = coherent_amplitudes(alpha * np.conj(rot), n_max)
    chis = []
    for l in (0, 1):
        ph = c.varphi(l) * t
        chis.append(
            dp * np.exp(-1j * ph) * ket_minus - dm * np.exp(1j * (ph + l * math.pi)) * ket_plus
        )
    return chis[0], chis[1]


def approx_state_linear(
    el0: ElectronicState,
    alpha: complex,
    c: RegimeCoeffs,
    t: float,
    n_max: int | None = None,
) -> JointState:
    """Approximate joint state in the linear regime, renormalized after truncation."""
    if n_max is None:
        n_max = default_truncation(abs(alpha) ** 2)
    coherent_state(alpha, n_max)  # leakage check
    _warn_beyond(t, time_scales(c).linear_valid_until, "linear")
    chi0, chi1 = chi_states_linear(el0, alpha, c, t, n_max)
    s = JointState(np.stack([chi0, np.exp(1j * np.angle(alpha)) * chi1]))
    return s.normalized()


def F_functions_linear(
    el0: ElectronicState, alpha: complex, c: RegimeCoeffs, t
) -> tuple[np.ndarray, np.ndarray]:
    """``(F_+(t), F_-(t))`` in closed form for the linear regime."""
    t = np.asarray(t, dtype=float)
    dp, dm = el0.d_amplitudes(float(np.angle(alpha)))
    u = np.exp(2j * c.omega1 * t)
    base = np.conj(dp) * dm * np.exp(2j * c.varphi(0) * t) * np.exp(abs(alpha) ** 2 * (u - 1))
    return np.real(base * (u + 1)), np.real(base * (u - 1))


def W_approx_linear(c: RegimeCoeffs, N: float, t):
    """Collapse-revival envelope formula for an initially excited ion."""
    t = np.asarray(t, dtype=float)
    arg = 2 * c.omega1 * t
    return np.exp(N * (np.cos(arg) - 1)) * np.cos(2 * c.varphi(1) * t + N * np.sin(arg))


def approx_state_quadratic(
    el0: ElectronicState,
    alpha: complex,
    c: RegimeCoeffs,
    t: float,
    n_max: int | None = None,
) -> JointState:
    """Approximate joint state in the quadratic (Kerr) regime.

    Each ``psi_phi^+-`` branch carries the mode through ``exp(-+ i A_0 t)``
    with ``A_0 = delta_0 + Delta_0 n + omega''/2 n^2`` diagonal in Fock space.
    """
    if n_max is None:
        n_max = default_truncation(abs(alpha) ** 2)
    coherent_state(alpha, n_max)
    _warn_beyond(t, time_scales(c).t_q, "quadratic")
    phi = float(np.angle(alpha))
    dp, dm = el0.d_amplitudes(phi)
    n = np.arange(n_max + 1)
    a0 = c.delta(0) + c.Delta(0) * n + 0.5 * c.omega2 * n.astype(float) ** 2
    ket = coherent_amplitudes(alpha, n_max)
    amps = np.zeros((2, n_max + 1), dtype=complex)
    for sign, d in ((1, dp), (-1, dm)):
        mode = np.exp(-1j * sign * a0 * t) * ket
        amps[1] += d * np.exp(1j * (phi - sign * c.omega1 * t)) * mode
        amps[0] += d * sign * mode
    return JointState(amps).normalized()

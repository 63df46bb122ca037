"""Cat-state generation and the hybrid Bell basis at half the revival time.

In the linear regime an ion+coherent-state input factorizes at ``t_h``.
Preparing the ion with suitable phases turns the mode into a cat state, and
cat-state inputs with ``phi_0 t_h = pi M + pi/4`` map the four product states
``|l>|alpha, k>`` onto four maximally entangled ion-cat Bell states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .approx import RegimeCoeffs, coefficients_at, time_scales
from .dynamics import ModelParams, propagate
from .hilbert import (
    ElectronicState,
    JointState,
    cat_state,
    coherent_state,
    default_truncation,
    joint_product,
)
from .specfun import SpecialPoint, find_special_points

__all__ = [
    "BELL_LABELS",
    "BellLabel",
    "MagicPoint",
    "special_point",
    "magic_N",
    "nearest_magic",
    "cat_prep_initial",
    "cat_target",
    "bell_input",
    "bell_output_ideal",
    "bell_overlaps",
    "bell_fidelity",
]


@dataclass(frozen=True)
class BellLabel:
    """Input ``|l>|alpha, k>``: electronic level ``l`` and cat parity ``k``."""

    l: int
    k: int

    def __post_init__(self):
        if self.l not in (0, 1) or self.k not in (0, 1):
            raise ValueError("Bell labels take values 0 or 1")

    @property
    def ground_parity(self) -> int:
        return self.l ^ self.k

    @property
    def excited_parity(self) -> int:
        return self.l ^ self.k ^ 1


BELL_LABELS = tuple(BellLabel(l, k) for l in (0, 1) for k in (0, 1))


@lru_cache(maxsize=1)
def _points() -> tuple[SpecialPoint, ...]:
    return tuple(find_special_points(70.0))


def special_point(j: int) -> SpecialPoint:
    """Tabulated special point ``x_j`` (j = 1..4)."""
    pts = _points()
    if not 1 <= j <= len(pts):
        raise ValueError(f"special point index must be in 1..{len(pts)}")
    return pts[j - 1]


@dataclass(frozen=True)
class MagicPoint:
    j: int
    M: int
    N: float
    x_j: float

    @property
    def eta(self) -> float:
        return self.eta_for(self.N)

    def eta_for(self, N: float) -> float:
        return math.sqrt(self.x_j / (4 * N))

    def coefficients(self, omega: float = 1.0) -> RegimeCoeffs:
        return coefficients_at(self.x_j, self.N, omega)


def magic_N(j: int, M: int) -> MagicPoint:
    """Mean phonon number with ``phi_0 t_h = pi M + pi/4`` at special point ``j``.

    The result does not depend on ``eta``.  Raises ``ValueError`` if the sign
    of ``M`` is incompatible with a positive ``N``.
    """
    sp = special_point(j)
    h, h1 = sp.h_derivs[0], sp.h_derivs[1]
    x = sp.x
    N = x * abs(h1) * (2 * M + 0.5) / (h - x * h1)
    if N <= 0:
        raise ValueError(
            f"sign mismatch: M={M} gives N={N:.4g} <= 0 at j={j}; "
            "the sign of M must match that of h - x h'"
        )
    return MagicPoint(j=j, M=M, N=float(N), x_j=float(x))


def nearest_magic(j: int, target_N: float) -> MagicPoint:
    """Magic point at ``j`` whose ``N`` is closest to ``target_N``."""
    sp = special_point(j)
    h, h1 = sp.h_derivs[0], sp.h_derivs[1]
    ratio = sp.x * abs(h1) / (h - sp.x * h1)
    m_cont = (target_N / ratio - 0.5) / 2
    candidates = []
    for M in (math.floor(m_cont), math.ceil(m_cont)):
        try:
            candidates.append(magic_N(j, M))
        except ValueError:
            pass
    return min(candidates, key=lambda mp: abs(mp.N - target_N))


def _half_phase(c: RegimeCoeffs) -> float:
    return c.varphi(0) * time_scales(c).t_h


def cat_prep_initial(
    sign: int, alpha: complex, c: RegimeCoeffs, n_max: int | None = None
) -> JointState:
    """Product input that evolves into a cat state of the mode at ``t_h``.

    ``sign=+1`` yields the even cat ``|i alpha, 0>``, ``sign=-1`` the odd one.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    theta = _half_phase(c)
    phi = float(np.angle(alpha))
    d_plus = np.exp(1j * theta) / math.sqrt(2)
    d_minus = -sign * np.exp(-1j * theta) / math.sqrt(2)
    el = ElectronicState.from_d(d_plus, d_minus, phi)
    return joint_product(el, coherent_state(alpha, n_max))


def cat_target(sign: int, alpha: complex, c: RegimeCoeffs, n_max: int | None = None) -> JointState:
    """Predicted product state at ``t_h`` for :func:`cat_prep_initial`.

    The ion ends in ``(|g> - i s e^{i phi} |e>)/sqrt 2`` with ``s`` the sign
    of ``omega_N'``; the mode in ``|i alpha, k>`` with ``k = 0`` for
    ``sign=+1``.
    """
    s = math.copysign(1.0, c.omega1)
    phi = float(np.angle(alpha))
    el = ElectronicState.from_unnormalized(1.0, -1j * s * np.exp(1j * phi))
    k = 0 if sign == 1 else 1
    return joint_product(el, cat_state(1j * alpha, k, n_max))


def bell_input(label: BellLabel, alpha: complex, n_max: int | None = None) -> JointState:
    """``|l> (x) |alpha, k>``."""
    el = ElectronicState(1.0, 0.0) if label.l == 0 else ElectronicState(0.0, 1.0)
    return joint_product(el, cat_state(alpha, label.k, n_max))


def bell_output_ideal(
    label: BellLabel,
    alpha: complex,
    M: int,
    n_max: int | None = None,
    omega1_sign: float = 1.0,
) -> JointState:
    """Ideal hybrid Bell state reached from :func:`bell_input` at ``t_h``.

    ``(|g>|i alpha, l^k> + e^{i pi k} e^{i phi} |e>|i alpha, l^k^1>)/sqrt 2``
    multiplied by the global phase ``i^k (-1)^(l+M) e^{-i l phi}``.  For a
    negative ``omega_N'`` the same states arise with an extra global sign
    ``s^(k+l)``.
    """
    if n_max is None:
        n_max = default_truncation(abs(alpha) ** 2)
    phi = float(np.angle(alpha))
    l, k = label.l, label.k
    g_mode = cat_state(1j * alpha, label.ground_parity, n_max).amplitudes
    e_mode = cat_state(1j * alpha, label.excited_parity, n_max).amplitudes
    amps = np.stack([g_mode, (-1) ** k * np.exp(1j * phi) * e_mode]) / math.sqrt(2)
    s = 1.0 if omega1_sign >= 0 else -1.0
    phase = 1j**k * (-1) ** (l + M) * np.exp(-1j * l * phi) * s ** (k + l)
    return JointState(phase * amps)


def bell_overlaps(
    mp: MagicPoint,
    phi: float = 0.0,
    freq_method: str = "laguerre_exact",
    n_max: int | None = None,
    omega: float = 1.0,
) -> np.ndarray:
    """4x4 matrix ``<out_a(ideal)| U(t_h) |in_b>`` over :data:`BELL_LABELS`."""
    c = mp.coefficients(omega)
    if n_max is None:
        n_max = default_truncation(mp.N)
    p = ModelParams(eta=mp.eta, n_max=n_max, omega=omega, freq_method=freq_method)
    t_h = time_scales(c).t_h
    alpha = math.sqrt(mp.N) * np.exp(1j * phi)
    s = math.copysign(1.0, c.omega1)
    outs = np.array(
        [bell_output_ideal(lb, alpha, mp.M, n_max, s).amplitudes.ravel() for lb in BELL_LABELS]
    )
    evolved = np.array(
        [propagate(bell_input(lb, alpha, n_max), [t_h], p)[0].ravel() for lb in BELL_LABELS]
    )
    return outs.conj() @ evolved.T


def bell_fidelity(
    j: int,
    M: int,
    phi_samples: int = 50,
    freq_method: str = "laguerre_exact",
    n_max: int | None = None,
    omega: float = 1.0,
) -> float:
    """Bell fidelity averaged over the four labels and ``phi_samples`` phases.

    Phases are the uniform grid ``2 pi i / phi_samples``.  The four
    fidelities are averaged (not summed) so the result lies in ``[0, 1]``.
    """
    mp = magic_N(j, M)
    total = 0.0
    for phi in 2 * np.pi * np.arange(phi_samples) / phi_samples:
        ov = bell_overlaps(mp, phi, freq_method, n_max, omega)
        total += float(np.mean(np.abs(np.diag(ov)) ** 2))
    return total / phi_samples


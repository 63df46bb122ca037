"""States of a two-level ion coupled to a truncated motional Fock space.

Joint amplitudes are stored as an array of shape ``(2, n_max + 1)`` indexed
by ``[l, n]`` with ``l = 0`` for the ground state ``|g>`` and ``l = 1`` for
the excited state ``|e>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special, stats

__all__ = [
    "TruncationError",
    "LEAKAGE_TOL",
    "ModeState",
    "ElectronicState",
    "JointState",
    "GROUND",
    "EXCITED",
    "default_truncation",
    "coherent_amplitudes",
    "coherent_state",
    "cat_state",
    "fock_state",
    "joint_product",
    "fidelity",
    "reduced_mode_density",
    "reduced_electronic_density",
    "purity",
    "parity",
]

LEAKAGE_TOL = 1e-10


class TruncationError(ValueError):
    """Raised when a state does not fit in the requested Fock truncation."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ModeState:
    """Pure state of the motional mode, amplitudes over n = 0..n_max."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen(self.amplitudes))
        if self.amplitudes.ndim != 1:
            raise ValueError("mode amplitudes must be one-dimensional")

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def mean_number(self) -> float:
        p = self.populations()
        return float(np.arange(p.size) @ p / p.sum())


@dataclass(frozen=True)
class ElectronicState:
    """``c_g |g> + c_e |e>``."""

    c_g: complex
    c_e: complex

    def __post_init__(self):
        if abs(abs(self.c_g) ** 2 + abs(self.c_e) ** 2 - 1.0) > 1e-12:
            raise ValueError("electronic state must be normalized")

    @classmethod
    def from_unnormalized(cls, c_g: complex, c_e: complex) -> "ElectronicState":
        n = math.hypot(abs(c_g), abs(c_e))
        return cls(complex(c_g) / n, complex(c_e) / n)

    @classmethod
    def random(cls, rng: np.random.Generator) -> "ElectronicState":
        """Haar-random state (uniform on the Bloch sphere)."""
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        return cls.from_unnormalized(z[0], z[1])

    def d_amplitudes(self, phi: float) -> tuple[complex, complex]:
        """Amplitudes ``(d+, d-)`` on ``|psi_phi^+-> = (e^{i phi}|e> +- |g>)/sqrt 2``."""
        a = np.exp(-1j * phi) * self.c_e
        return (a + self.c_g) / math.sqrt(2), (a - self.c_g) / math.sqrt(2)

    @classmethod
    def from_d(cls, d_plus: complex, d_minus: complex, phi: float) -> "ElectronicState":
        """Inverse of :meth:`d_amplitudes`."""
        c_e = np.exp(1j * phi) * (d_plus + d_minus) / math.sqrt(2)
        c_g = (d_plus - d_minus) / math.sqrt(2)
        return cls.from_unnormalized(c_g, c_e)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c_g, self.c_e], dtype=complex)


GROUND = ElectronicState(1.0, 0.0)
EXCITED = ElectronicState(0.0, 1.0)


@dataclass(frozen=True, eq=False)
class JointState:
    """Pure state of ion + mode, amplitudes indexed ``[l, n]``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen(self.amplitudes))
        if self.amplitudes.ndim != 2 or self.amplitudes.shape[0] != 2:
            raise ValueError("joint amplitudes must have shape (2, n_max + 1)")

    @property
    def n_max(self) -> int:
        return self.amplitudes.shape[1] - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "JointState":
        return JointState(self.amplitudes / self.norm)

    def branch(self, l: int) -> ModeState:
        """Unnormalized mode state conditioned on electronic level ``l``."""
        return ModeState(self.amplitudes[l])


def default_truncation(mean_number: float) -> int:
    """Fock cutoff ``ceil(N + 10 sqrt(N)) + 10``.

    The additive margin keeps the Poisson tail below ``LEAKAGE_TOL`` for
    small ``N`` where ten standard deviations are not enough.
    """
    return int(math.ceil(mean_number + 10 * math.sqrt(mean_number))) + 10


def coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    """Raw amplitudes ``<n|alpha>`` for n = 0..n_max, evaluated in log space."""
    n = np.arange(n_max + 1)
    r = abs(alpha)
    if r == 0:
        out = np.zeros(n_max + 1, dtype=complex)
        out[0] = 1.0
        return out
    log_p = n * math.log(r) - 0.5 * r * r - 0.5 * special.gammaln(n + 1)
    return np.exp(log_p + 1j * n * np.angle(alpha))


def _check_leakage(alpha: complex, n_max: int, tol: float) -> None:
    tail = stats.poisson.sf(n_max, abs(alpha) ** 2)
    if tail > tol:
        raise TruncationError(
            f"coherent state |alpha|={abs(alpha):.4g} leaks {tail:.3g} past n_max={n_max}"
        )


def coherent_state(
    alpha: complex, n_max: int | None = None, leakage_tol: float = LEAKAGE_TOL
) -> ModeState:
    """Coherent state ``|alpha>`` truncated at ``n_max`` and renormalized.

    Raises :class:`TruncationError` if the discarded Poisson tail exceeds
    ``leakage_tol``.
    """
    if n_max is None:
        n_max = default_truncation(abs(alpha) ** 2)
    _check_leakage(alpha, n_max, leakage_tol)
    amps = coherent_amplitudes(alpha, n_max)
    return ModeState(amps / np.linalg.norm(amps))


def cat_state(
    alpha: complex, k: int, n_max: int | None = None, leakage_tol: float = LEAKAGE_TOL
) -> ModeState:
    """Even (``k=0``) or odd (``k=1``) cat ``(|alpha> + (-1)^k |-alpha>) / norm``.

    The norm uses ``<alpha|-alpha> = exp(-2|alpha|^2)`` so that the parity of
    the result is exact.
    """
    if k not in (0, 1):
        raise ValueError("cat parity k must be 0 or 1")
    if n_max is None:
        n_max = default_truncation(abs(alpha) ** 2)
    _check_leakage(alpha, n_max, leakage_tol)
    plus = coherent_amplitudes(alpha, n_max)
    n = np.arange(n_max + 1)
    # <n|-alpha> = (-1)^n <n|alpha>
    amps = plus * (1 + (-1) ** k * (-1.0) ** n)
    r2 = abs(alpha) ** 2
    if r2 == 0 and k == 1:
        raise ValueError("odd cat is undefined for alpha = 0")
    norm2 = 2 * (1 + (-1) ** k * math.exp(-2 * r2))
    amps = amps / math.sqrt(norm2)
    # remove the (tiny) truncation deficit without touching the parity pattern
    return ModeState(amps / np.linalg.norm(amps))


def fock_state(n: int, n_max: int) -> ModeState:
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[n] = 1.0
    return ModeState(amps)


def joint_product(el: ElectronicState, mode: ModeState) -> JointState:
    """``|el> (x) |mode>``."""
    return JointState(np.outer(el.vector, mode.amplitudes))


def _amps(s) -> np.ndarray:
    return s.amplitudes if hasattr(s, "amplitudes") else np.asarray(s)


def fidelity(a, b) -> float:
    """``|<a|b>|^2`` for two pure states of the same kind and truncation."""
    x, y = _amps(a), _amps(b)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(abs(np.vdot(x, y)) ** 2)


def reduced_mode_density(s: JointState) -> np.ndarray:
    """Partial trace over the electronic level, ``rho[m, n] = <m|rho|n>``."""
    a = s.amplitudes
    return a.T @ a.conj()


def reduced_electronic_density(s: JointState) -> np.ndarray:
    """2x2 reduced state of the ion, basis order ``(g, e)``."""
    a = s.amplitudes
    return a @ a.conj().T


def purity(rho: np.ndarray) -> float:
    """``Tr rho^2`` of a Hermitian matrix."""
    return float(np.real(np.sum(rho * rho.T)))


def parity(mode: ModeState) -> float:
    """Expectation of ``(-1)^{a^dagger a}``."""
    p = mode.populations()
    sign = 1.0 - 2.0 * (np.arange(p.size) % 2)
    return float(sign @ p / p.sum())

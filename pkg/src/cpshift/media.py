"""Reflection models for the lower half-space.

Three media are supported: a perfect electric conductor, a perfect
nonreciprocal mirror (pure s<->p conversion with a fixed sign), and a
half-space with permittivity/permeability plus an axion magneto-electric
coupling theta.  Medium 1 (where the atom sits) is always vacuum.

All reflection evaluations are vectorized over k_par and accept real
frequencies as well as purely imaginary omega = i*xi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .constants import ALPHA_FS

__all__ = [
    "Polarization", "ReflectionMatrix", "PoleError",
    "PerfectConductor", "PerfectNonreciprocalMirror", "AxionMedium",
    "ConstantReflectionMedium",
    "delta", "perpendicular_wavenumber", "reflection",
    "retarded_limit_coefficients", "nonretarded_limit_coefficients",
]


class Polarization(Enum):
    s = "s"
    p = "p"


class PoleError(ArithmeticError):
    """Shared reflection denominator vanished on the integration path."""


@dataclass(frozen=True, eq=False)
class ReflectionMatrix:
    """2x2 reflection coefficients r[outgoing][incoming].

    Entries may be scalars or ndarrays (vectorized over k_par).
    """

    r_ss: complex
    r_sp: complex
    r_ps: complex
    r_pp: complex

    def entry(self, outgoing: Polarization, incoming: Polarization):
        return getattr(self, f"r_{outgoing.value}{incoming.value}")

    def as_array(self) -> np.ndarray:
        return np.array([[self.r_ss, self.r_sp], [self.r_ps, self.r_pp]])


def delta(theta1: float, theta2: float) -> float:
    """Dimensionless axion mismatch alpha*(theta2 - theta1)/pi."""
    return ALPHA_FS * (theta2 - theta1) / math.pi


def perpendicular_wavenumber(omega, k_par, epsilon: float = 1.0, mu: float = 1.0,
                             c: float = 1.0):
    """k_perp = sqrt(eps*mu*omega^2/c^2 - k_par^2) with Im >= 0.

    Branch: Im(k_perp) >= 0 so that e^{i k_perp z} decays for z > 0; on the
    real axis (propagating waves) the root with Re >= 0 is taken.  Works for
    real omega and for omega = i*xi (result then purely imaginary positive).
    """
    k_par = np.asarray(k_par, dtype=float)
    if omega == 0 and np.any(k_par == 0):
        raise ValueError("k_perp undefined at omega = k_par = 0")
    kz = np.sqrt(epsilon * mu * (omega / c) ** 2 - k_par ** 2 + 0j)
    # np.sqrt of a negative real with -0j imaginary part lands on the wrong
    # side of the cut; fold everything back onto Im >= 0.
    kz = np.where(kz.imag < 0, -kz, kz)
    kz = np.where((kz.imag == 0) & (kz.real < 0), -kz, kz)
    return kz[()] if kz.ndim == 0 else kz


@dataclass(frozen=True)
class PerfectConductor:
    """r_ss = -1, r_pp = +1, no polarization mixing."""

    label = "perfect_conductor"

    def reflection(self, omega, k_par, c: float = 1.0) -> ReflectionMatrix:
        shape = np.shape(k_par)
        one = np.ones(shape) if shape else 1.0
        zero = np.zeros(shape) if shape else 0.0
        return ReflectionMatrix(r_ss=-one, r_sp=zero, r_ps=zero, r_pp=+one)


@dataclass(frozen=True)
class PerfectNonreciprocalMirror:
    """Pure conversion mirror: r_ss = r_pp = 0, r_sp = r_ps = sign."""

    sign: float = -1.0

    label = "nonreciprocal_mirror"

    def __post_init__(self):
        if self.sign not in (-1.0, 1.0, -1, 1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    def reflection(self, omega, k_par, c: float = 1.0) -> ReflectionMatrix:
        shape = np.shape(k_par)
        s = self.sign * (np.ones(shape) if shape else 1.0)
        zero = np.zeros(shape) if shape else 0.0
        return ReflectionMatrix(r_ss=zero, r_sp=s, r_ps=s, r_pp=zero)


@dataclass(frozen=True)
class AxionMedium:
    """Half-space with permittivity, permeability and axion coupling theta.

    Medium 1 is vacuum (eps_1 = 1, theta_1 = 0, n_1 = 1).  The cross
    coefficients carry Delta = alpha*theta/pi.  mu enters only through
    k_perp_2 = sqrt(eps*mu*omega^2/c^2 - k_par^2); the epsilon weights in
    the coefficient formulas are kept as printed for mu = 1.  Nondispersive
    (constant eps, mu) by construction.
    """

    epsilon: float = 1.0
    mu: float = 1.0
    theta: float = math.pi
    delta: float = field(init=False)

    label = "axion"

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        object.__setattr__(self, "delta", delta(0.0, self.theta))

    def reflection(self, omega, k_par, c: float = 1.0) -> ReflectionMatrix:
        k1 = perpendicular_wavenumber(omega, k_par, 1.0, 1.0, c)
        k2 = perpendicular_wavenumber(omega, k_par, self.epsilon, self.mu, c)
        dd = self.delta ** 2
        den = (k1 + k2) * (self.epsilon * k1 + k2) + k1 * k2 * dd
        if np.any(den == 0):
            raise PoleError(f"reflection pole at omega={omega}, k_par={k_par}")
        r_ss = ((k1 - k2) * (self.epsilon * k1 + k2) - k1 * k2 * dd) / den
        r_pp = ((self.epsilon * k1 - k2) * (k1 + k2) + k1 * k2 * dd) / den
        r_x = -2.0 * k1 * k2 * self.delta / den
        return ReflectionMatrix(r_ss=r_ss, r_sp=r_x, r_ps=r_x, r_pp=r_pp)


@dataclass(frozen=True)
class ConstantReflectionMedium:
    """Fixed coefficients at every (omega, k_par); single-channel test medium."""

    r_ss: complex = 0.0
    r_sp: complex = 0.0
    r_ps: complex = 0.0
    r_pp: complex = 0.0

    label = "constant"

    def reflection(self, omega, k_par, c: float = 1.0) -> ReflectionMatrix:
        shape = np.shape(k_par)
        one = np.ones(shape) if shape else 1.0
        return ReflectionMatrix(r_ss=self.r_ss * one, r_sp=self.r_sp * one,
                                r_ps=self.r_ps * one, r_pp=self.r_pp * one)


def reflection(medium, omega, k_par, c: float = 1.0) -> ReflectionMatrix:
    """Reflection matrix of `medium` at (omega, k_par)."""
    return medium.reflection(omega, k_par, c=c)


def retarded_limit_coefficients(medium) -> ReflectionMatrix:
    """Constant coefficients governing the far-field (retarded) regime.

    For the axion half-space these are the normal-incidence values, written
    with n = sqrt(eps*mu): r_ss = ((1-eps) - Delta^2)/((1+n)^2 + Delta^2)
    for mu = 1, etc.  Ideal mirrors return their defining constants.
    """
    if isinstance(medium, PerfectConductor):
        return ReflectionMatrix(-1.0, 0.0, 0.0, 1.0)
    if isinstance(medium, PerfectNonreciprocalMirror):
        return ReflectionMatrix(0.0, medium.sign, medium.sign, 0.0)
    eps, dd = medium.epsilon, medium.delta ** 2
    n = math.sqrt(medium.epsilon * medium.mu)
    den = (1.0 + n) * (eps + n) + n * dd
    r_ss = ((1.0 - n) * (eps + n) - n * dd) / den
    r_pp = ((eps - n) * (1.0 + n) + n * dd) / den
    r_x = -2.0 * n * medium.delta / den
    return ReflectionMatrix(r_ss=r_ss, r_sp=r_x, r_ps=r_x, r_pp=r_pp)


def nonretarded_limit_coefficients(medium) -> ReflectionMatrix:
    """Constant coefficients of the near-field regime (k_par -> infinity)."""
    if isinstance(medium, PerfectConductor):
        return ReflectionMatrix(-1.0, 0.0, 0.0, 1.0)
    if isinstance(medium, PerfectNonreciprocalMirror):
        return ReflectionMatrix(0.0, medium.sign, medium.sign, 0.0)
    eps, dd = medium.epsilon, medium.delta ** 2
    den = 2.0 * (eps + 1.0) + dd
    return ReflectionMatrix(r_ss=-dd / den,
                            r_sp=-2.0 * medium.delta / den,
                            r_ps=-2.0 * medium.delta / den,
                            r_pp=(2.0 * (eps - 1.0) + dd) / den)

"""Coincident-point scattering Green's tensor above a planar interface.

The azimuthal integral over the reflected-wave dyadics is done analytically,
leaving three radial kernels (with q = omega/c):

    diag (xx = yy):  e^{2 i k_perp z} [ r_ss - r_pp k_perp^2/q^2 ]
    zz:              e^{2 i k_perp z} 2 r_pp k_par^2/q^2
    xy (= -yx):      e^{2 i k_perp z} (r_sp + r_ps) k_perp/q

and G_ab = (i/8pi) * integral over the k_par half-line with measure
(k_par/k_perp) dk_par.  For real omega the path is split at the lightline:
on the propagating segment we parametrize by real k_perp in (0, q], whose
Jacobian cancels the 1/k_perp of the measure exactly; on the evanescent
segment k_perp = i*kappa and the measure contributes -i dkappa, damped by
e^{-2 kappa z}.  For omega = i*xi the whole path is parametrized by
k_perp = i*kappa1, kappa1 >= xi/c, every factor is real, and the tensor
comes out real (Schwarz reflection principle).

Ideal mirrors additionally have closed forms, used as oracles and as the
fast path for the scan grids.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import Constants, SCALED
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "ComplexDyadic", "EvaluationPoint",
    "greens_perfect_conductor", "greens_nonreciprocal_mirror",
    "scattering_greens_numeric", "generalized_re", "generalized_im",
]


@dataclass(frozen=True, eq=False)
class ComplexDyadic:
    """3x3 complex tensor with optional quadrature diagnostics."""

    matrix: np.ndarray
    quad_error: float = 0.0
    neval: int = 0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def xx(self) -> complex:
        return self.matrix[0, 0]

    @property
    def xy(self) -> complex:
        return self.matrix[0, 1]

    @property
    def yx(self) -> complex:
        return self.matrix[1, 0]

    @property
    def yy(self) -> complex:
        return self.matrix[1, 1]

    @property
    def zz(self) -> complex:
        return self.matrix[2, 2]

    def contract(self, dipole: np.ndarray) -> complex:
        """Scalar sandwich d . G . conj(d)."""
        d = np.asarray(dipole, dtype=complex)
        return complex(d @ self.matrix @ np.conj(d))


@dataclass(frozen=True)
class EvaluationPoint:
    """Atom height z > 0 and the (real or purely imaginary) frequency."""

    z: float
    frequency: complex

    def __post_init__(self):
        if self.z <= 0:
            raise ValueError(f"atom height must be positive, got z={self.z}")
        w = complex(self.frequency)
        real_positive = w.imag == 0 and w.real > 0
        imag_positive = w.real == 0 and w.imag > 0
        if not (real_positive or imag_positive):
            raise ValueError(
                f"frequency must be real-positive or i*xi with xi>0, got {w}")

    @property
    def is_imaginary(self) -> bool:
        return complex(self.frequency).real == 0


def generalized_re(dyadic):
    """Hermitian part (A + A^dagger)/2; the coincident-point generalized Re."""
    if isinstance(dyadic, ComplexDyadic):
        return ComplexDyadic(generalized_re(dyadic.matrix))
    a = np.asarray(dyadic, dtype=complex)
    return 0.5 * (a + a.conj().T)


def generalized_im(dyadic):
    """Anti-Hermitian part (A - A^dagger)/(2i); Hermitian-valued."""
    if isinstance(dyadic, ComplexDyadic):
        return ComplexDyadic(generalized_im(dyadic.matrix))
    a = np.asarray(dyadic, dtype=complex)
    return (a - a.conj().T) / 2j


def greens_perfect_conductor(z: float, omega: complex,
                             constants: Constants = SCALED) -> ComplexDyadic:
    """Closed-form conductor tensor; diagonal only, valid at omega or i*xi."""
    if z <= 0:
        raise ValueError(f"atom height must be positive, got z={z}")
    c = constants.c
    phase = np.exp(2j * omega * z / c)
    xx = (-1.0 / (8 * np.pi * z)
          - 1j * c / (16 * np.pi * omega * z ** 2)
          + c ** 2 / (32 * np.pi * omega ** 2 * z ** 3)) * phase
    zz = (-1j * c / (8 * np.pi * omega * z ** 2)
          + c ** 2 / (16 * np.pi * omega ** 2 * z ** 3)) * phase
    return ComplexDyadic(np.diag([xx, xx, zz]))


def greens_nonreciprocal_mirror(z: float, omega: complex, sign: float = -1.0,
                                constants: Constants = SCALED) -> ComplexDyadic:
    """Closed-form conversion-mirror tensor; only xy = -yx is nonzero."""
    if z <= 0:
        raise ValueError(f"atom height must be positive, got z={z}")
    c = constants.c
    xy = sign * (1.0 / (8 * np.pi * z)
                 + 1j * c / (16 * np.pi * omega * z ** 2)) * np.exp(2j * omega * z / c)
    m = np.zeros((3, 3), dtype=complex)
    m[0, 1] = xy
    m[1, 0] = -xy
    return ComplexDyadic(m)


def _segment(medium, omega, z, c, k_perp_of, k_par_of, lo, hi, rel_tol):
    """Integrate the three kernels over one path segment.

    k_perp_of/k_par_of map the quadrature variable t in [lo, hi] to the
    (complex) k_perp and (real) k_par on this piece of the contour.
    Returns (diag, zz, xy) integrals plus summed error and eval count.
    """
    q = omega / c
    results = []
    err = 0.0
    neval = 0

    def make(component):
        def f(t):
            kp = k_perp_of(t)
            kpar = k_par_of(t)
            r = medium.reflection(omega, kpar, c=c)
            damp = np.exp(2j * kp * z)
            if component == "diag":
                return damp * (r.r_ss - r.r_pp * kp ** 2 / q ** 2)
            if component == "zz":
                return damp * 2.0 * r.r_pp * kpar ** 2 / q ** 2
            return damp * (r.r_sp + r.r_ps) * kp / q
        return f

    for component in ("diag", "zz", "xy"):
        res = integrate(make(component), lo, hi, rel_tol=rel_tol)
        results.append(res.value)
        err += res.error
        neval += res.neval
    return results[0], results[1], results[2], err, neval


def scattering_greens_numeric(point: EvaluationPoint, medium,
                              constants: Constants = SCALED,
                              config: QuadratureConfig | None = None) -> ComplexDyadic:
    """Quadrature evaluation of the scattering tensor at coincident points."""
    cfg = config or QuadratureConfig()
    c = constants.c
    z = point.z
    omega = complex(point.frequency)
    kappa_max = cfg.kappa_cutoff / (2.0 * z)

    if point.is_imaginary:
        xi = omega.imag
        lo = xi / c
        # k_perp = i*kappa1 along the whole rotated path; measure -i dkappa1
        # combines with the i/8pi prefactor to 1/8pi.
        diag, zz, xy, err, neval = _segment(
            medium, omega, z, c,
            k_perp_of=lambda t: 1j * t,
            k_par_of=lambda t: np.sqrt(np.maximum(t * t - (xi / c) ** 2, 0.0)),
            lo=lo, hi=lo + kappa_max, rel_tol=cfg.rel_tol)
        pref = 1.0 / (8 * np.pi)
        g_diag, g_zz, g_xy = pref * diag, pref * zz, pref * xy
        quad_err = pref * err
    else:
        q = omega.real / c
        # propagating: k_perp in (0, q], Jacobian cancels the 1/k_perp measure
        d1, z1, x1, e1, n1 = _segment(
            medium, omega, z, c,
            k_perp_of=lambda t: t,
            k_par_of=lambda t: np.sqrt(np.maximum(q * q - t * t, 0.0)),
            lo=0.0, hi=q, rel_tol=cfg.rel_tol)
        # evanescent: k_perp = i*kappa, measure -i dkappa, e^{-2 kappa z} decay
        d2, z2, x2, e2, n2 = _segment(
            medium, omega, z, c,
            k_perp_of=lambda t: 1j * t,
            k_par_of=lambda t: np.sqrt(q * q + t * t),
            lo=0.0, hi=kappa_max, rel_tol=cfg.rel_tol)
        pref = 1j / (8 * np.pi)
        g_diag = pref * (d1 - 1j * d2)
        g_zz = pref * (z1 - 1j * z2)
        g_xy = pref * (x1 - 1j * x2)
        quad_err = abs(pref) * (e1 + e2)
        neval = n1 + n2

    m = np.zeros((3, 3), dtype=complex)
    m[0, 0] = m[1, 1] = g_diag
    m[2, 2] = g_zz
    m[0, 1] = g_xy
    m[1, 0] = -g_xy
    return ComplexDyadic(m, quad_error=quad_err, neval=neval)

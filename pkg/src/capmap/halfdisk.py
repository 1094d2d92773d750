"""Conformal data of the open upper half-disk Omega = {|z| < 1, Im z > 0}.

Interior side: ell(z) = log((1+z)^2 / (1-z)^2) maps Omega onto the strip
0 < Im < pi, which gives Green's function, the conformal radius 1/h(w),
and the inner conformal center on the imaginary axis.

Exterior side: g(z) = (1 + 2 m^(3/2) + m^3) / (m^3 - 1) with
m(z) = (e^{i pi/6} + 1/z) / (-e^{-i pi/6} + 1/z) maps the unit disk onto
the complement of the closed half-disk, with a simple pole at 0.
"""

from dataclasses import dataclass
import cmath
import math

import numpy as np

from capmap.errors import DomainError, PoleError
from capmap.optimize import bisect_derivative, golden_section
from capmap.sc_exterior import laurent_summary

_E_PI6 = cmath.exp(1j * math.pi / 6)  # sqrt(3)/2 + i/2
_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class InnerCenterResult:
    y0: float
    max_inner_radius: float
    h_at_y0: float


@dataclass(frozen=True)
class OuterSummaryHalfDisk:
    outer_radius: float
    outer_center: complex
    error: float


def in_half_disk(z):
    z = complex(z)
    return z.imag > 0 and abs(z) < 1


def _require_inside(z, name="z"):
    if not in_half_disk(z):
        raise DomainError(f"{name} = {z} is not in the open upper half-disk")


def ell(z):
    """Map Omega onto the horizontal strip 0 < Im < pi."""
    z = complex(z)
    _require_inside(z)
    # Arg((1+z)/(1-z)) lies in (0, pi/2) on Omega, so the square's log is twice the log
    return 2.0 * cmath.log((1 + z) / (1 - z))


def green_map(w, z):
    """Conformal map of Omega onto the unit disk sending w to 0.

    ln|green_map(w, z)| is Green's function of Omega with pole at w.
    """
    w = complex(w)
    _require_inside(w, "w")
    lw = ell(w)
    ez = cmath.exp(ell(z))
    return (ez - cmath.exp(lw)) / (ez - cmath.exp(lw.conjugate()))


def h_general(w):
    """lim_{z -> w} |f_w(z) / (z - w)|; 1/h(w) is the conformal radius at w."""
    w = complex(w)
    lw = ell(w)
    dl = 4.0 / (1 - w * w)
    ew = cmath.exp(lw)
    return abs(ew * dl / (ew - cmath.exp(lw.conjugate())))


def h_axis(y):
    """h(iy) = (1 + y^2) / (2y (1 - y^2)) for 0 < y < 1."""
    if not 0.0 < y < 1.0:
        raise DomainError(f"h_axis needs 0 < y < 1, got {y}")
    return (1 + y * y) / (2 * y * (1 - y * y))


def inner_center(bracket_tol=1e-8, tol=1e-12, h=1e-5):
    """Minimize h on the imaginary axis: golden section, then bisection on h'."""
    lo, hi = golden_section(h_axis, 1e-3, 1 - 1e-3, bracket_tol)
    lo, hi = max(lo - bracket_tol, 2 * h), min(hi + bracket_tol, 1 - 2 * h)
    y0 = bisect_derivative(h_axis, lo, hi, tol, h)
    h0 = h_axis(y0)
    return InnerCenterResult(y0, 1.0 / h0, h0)


def m_of_z(z):
    """(e^{i pi/6} + 1/z) / (-e^{-i pi/6} + 1/z)."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise PoleError("m(z) is undefined at z = 0")
    u = 1.0 / z
    den = u - _E_PI6.conjugate()
    if np.any(den == 0):
        raise PoleError("m(z) has a pole where 1/z = e^{-i pi/6}")
    out = (u + _E_PI6) / den
    return out if out.ndim else complex(out)


def _m_minus_one(z):
    # m - 1 = 2 cos(pi/6) / (1/z - e^{-i pi/6}) = sqrt(3) z / (1 - z e^{-i pi/6})
    return _SQRT3 * z / (1.0 - z * _E_PI6.conjugate())


def exterior_map_halfdisk(z):
    """Exterior map of the unit disk onto the complement of the closed half-disk.

    m^3 - 1 is formed as (m - 1)(m^2 + m + 1) with m - 1 computed directly,
    which keeps full relative accuracy at the pole.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise PoleError("the exterior map has its pole at z = 0")
    if np.any(np.abs(z) > 1):
        raise DomainError("z must lie in the closed unit disk")
    mm1 = _m_minus_one(z)
    m = 1.0 + mm1
    m3m1 = mm1 * (m * m + m + 1.0)
    m32 = np.exp(1.5 * np.log(m))
    out = (2.0 + 2.0 * m32 + m3m1) / m3m1
    return out if out.ndim else complex(out)


def _halfdisk_sampler(r, n):
    pts = r * np.exp(2j * np.pi * np.arange(n) / n)
    return exterior_map_halfdisk(pts), pts, 0.0


def outer_summary_halfdisk(r=0.5, n=64, tol=1e-12):
    """Outer radius and outer conformal center from the Laurent machinery."""
    s = laurent_summary(None, r=r, n=n, tol=tol, sampler=_halfdisk_sampler)
    return OuterSummaryHalfDisk(s.kappa, s.center, s.error)

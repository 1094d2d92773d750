"""Logarithmic capacity of triangles.

Haegi's closed form gives the capacity of any triangle from its angles,
area and circumradius:

    kappa = A / (4 pi^2 q(alpha/pi) q(beta/pi) q(gamma/pi) R),
    q(x)  = sqrt(x^x / (1-x)^(1-x)) / Gamma(x).

The isosceles specialization, its maximizing apex angle, comparisons with
the equilateral triangle, and a brute-force transfinite-diameter estimate
live here too.
"""

from dataclasses import dataclass
import math

import numpy as np

from capmap import kernels
from capmap.errors import DomainError
from capmap.geometry import Triangle
from capmap.optimize import golden_section, newton_on_derivative
from capmap.specfun import gamma_real

__all__ = [
    "CapacityResult", "TriangleGeometry", "triangle_geometry", "haegi_q",
    "haegi_capacity", "isosceles_capacity", "maximize_isosceles_capacity",
    "extremal_comparison", "transfinite_diameter_estimate",
]


@dataclass(frozen=True)
class TriangleGeometry:
    angles: tuple
    area: float
    circumradius: float


@dataclass(frozen=True)
class CapacityResult:
    kappa: float
    method: str  # "haegi", "isosceles-formula" or "sc-laurent"


def triangle_geometry(tri):
    a, b, c = tri.sides
    s = 0.5 * (a + b + c)
    area = math.sqrt(s * (s - a) * (s - b) * (s - c))
    circumradius = a * b * c / math.sqrt(
        (a + b + c) * (b + c - a) * (c + a - b) * (a + b - c))
    return TriangleGeometry(tri.angles(), area, circumradius)


def haegi_q(x):
    if not 0.0 < x < 1.0:
        raise DomainError(f"q(x) needs 0 < x < 1, got {x}")
    return math.sqrt(x ** x / (1.0 - x) ** (1.0 - x)) / gamma_real(x)


def haegi_capacity(tri):
    """Logarithmic capacity of ``tri`` by Haegi's formula."""
    geo = triangle_geometry(tri)
    q = 1.0
    for ang in geo.angles:
        q *= haegi_q(ang / math.pi)
    return CapacityResult(
        geo.area / (4.0 * math.pi ** 2 * q * geo.circumradius), "haegi")


def isosceles_capacity(theta):
    """Capacity of the isosceles triangle with unit legs and apex ``theta``."""
    if not 0.0 < theta < math.pi:
        raise DomainError(f"apex angle must lie in (0, pi), got {theta}")
    pi = math.pi
    kappa = (math.sqrt(pi + theta) / (8.0 * pi ** 2.5)
             * ((pi + theta) / (4.0 * theta)) ** (theta / (2.0 * pi))
             * math.sin(theta) ** 2 / math.sin(0.5 * theta)
             * gamma_real(theta / pi) * gamma_real((pi - theta) / (2.0 * pi)) ** 2)
    return CapacityResult(kappa, "isosceles-formula")


def maximize_isosceles_capacity(bracket_tol=1e-6, newton_steps=5, h=1e-5):
    """Apex angle maximizing the isosceles capacity, and the maximal capacity.

    Golden-section search narrows the bracket, then Newton steps on the
    centered-difference derivative polish the angle.  The result is checked
    to be a genuine interior maximum by a sign change of the derivative.
    """
    def neg(theta):
        return -isosceles_capacity(theta).kappa

    lo, hi = golden_section(neg, 0.05, math.pi - 0.05, bracket_tol)
    theta = newton_on_derivative(neg, 0.5 * (lo + hi), h, newton_steps)
    k0 = -neg(theta)
    if not (k0 >= -neg(theta - 1e-4) and k0 >= -neg(theta + 1e-4)):
        raise ArithmeticError("derivative polish left the maximum")
    return theta, k0


_EQUILATERAL_UNIT = None


def _equilateral_unit_capacity():
    global _EQUILATERAL_UNIT
    if _EQUILATERAL_UNIT is None:
        _EQUILATERAL_UNIT = haegi_capacity(Triangle((1.0, 1.0, 1.0))).kappa
    return _EQUILATERAL_UNIT


def extremal_comparison(tri, mode):
    """Ratio of ``tri``'s capacity to an equilateral triangle's of equal size.

    ``mode`` is ``"fixed-area"`` or ``"fixed-perimeter"``.  The ratio is at
    least 1 in the first mode and at most 1 in the second.
    """
    kappa = haegi_capacity(tri).kappa
    if mode == "fixed-area":
        side = math.sqrt(4.0 * triangle_geometry(tri).area / math.sqrt(3.0))
    elif mode == "fixed-perimeter":
        side = tri.perimeter() / 3.0
    else:
        raise DomainError(f"unknown comparison mode {mode!r}")
    return kappa / (side * _equilateral_unit_capacity())


def _boundary_points(verts, n, start):
    """``n`` points evenly spaced by arclength around the boundary from vertex ``start``."""
    vs = [verts[(start + k) % 3] for k in range(3)]
    edges = [(vs[k], vs[(k + 1) % 3]) for k in range(3)]
    lengths = [abs(q - p) for p, q in edges]
    per = sum(lengths)
    out = []
    for j in range(n):
        s = per * j / n
        for (p, q), ln in zip(edges, lengths):
            if s <= ln:
                out.append(p + (q - p) * (s / ln))
                break
            s -= ln
    return out


def transfinite_diameter_estimate(tri, n, restarts=20, seed=0, min_step=1e-9):
    """Lower bound on the n-th diameter max (prod_{j<k} |z_j - z_k|)^(2/(n(n-1))).

    Multi-start projected coordinate ascent of the log-energy over points in
    the closed triangle.  The first three starts place points evenly along
    the boundary beginning at each vertex; the rest are uniform in the
    triangle.
    """
    if n < 2:
        raise DomainError("need at least two points")
    if tri.vertices is None:
        tri = Triangle.from_sides(*tri.sides)
    verts = list(tri.vertices)
    if not tri.is_counterclockwise():
        verts = [verts[0], verts[2], verts[1]]
    flat = [coord for v in verts for coord in (v.real, v.imag)]
    rng = np.random.default_rng(seed)
    step0 = 0.25 * max(tri.sides)
    best = -math.inf
    for r in range(restarts):
        if r < 3:
            pts = _boundary_points(verts, n, r)
        else:
            u = rng.random((n, 2))
            flip = u.sum(axis=1) > 1.0
            u[flip] = 1.0 - u[flip]
            pts = [verts[0] + s * (verts[1] - verts[0]) + t * (verts[2] - verts[0])
                   for s, t in u]
        px = np.array([p.real for p in pts])
        py = np.array([p.imag for p in pts])
        energy = kernels.fekete_ascent(px, py, flat, step0, min_step)
        best = max(best, energy)
    return math.exp(2.0 * best / (n * (n - 1)))

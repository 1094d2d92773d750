"""Exterior Schwarz-Christoffel maps of triangles.

The map from the unit disk onto the complement of a triangle is

    g(z) = scale * f(z) + shift,
    f(z) = int_{z0}^{z} prod_k (zeta - a_k)^mu_k / zeta^2 dzeta,

with prevertices a_k on the unit circle, exponents mu_k = 1 - (interior
angle)/pi, and the residue condition sum_k mu_k / a_k = 0 so that g has a
simple pole at the origin.  The basepoint z0 is the first prevertex.

``f`` is computed by path quadrature with the arguments of the factors
(zeta - a_k) continued along the path.  For isosceles triangles a closed
form in terms of Appell F1 is available as an independent route.  Laurent
coefficients of g at the origin come from trapezoidal sums on a circle.
"""

from dataclasses import dataclass, replace
import cmath
import math

import numpy as np

from capmap.errors import (BranchStepError, ConvergenceError, DomainError,
                           NumericalError)
from capmap.geometry import Triangle
from capmap.quadrature import gauss_legendre, tanh_sinh
from capmap.specfun import (DEFAULT_CONFIG as F1_CONFIG, AppellArgs,
                            appell_f1, gamma_real)

__all__ = [
    "MapConfig", "ExteriorMapSpec", "Segment", "PathSpec", "BranchTracker",
    "LaurentSummary", "GridData", "exponents_from_triangle",
    "isosceles_prevertices", "solve_prevertices", "build_path", "f_numeric",
    "f_polyline", "f_closed_isosceles", "sc_integrand", "make_isosceles_map",
    "make_general_map", "make_unit_legs_right_map", "evaluate_map",
    "laurent_coefficients", "laurent_summary", "vertex_images", "circle_values",
    "grid_radii", "residue", "isosceles_exponents",
    "closed_form_kappa_right_isosceles", "closed_form_lambda_right_isosceles",
    "outer_center_unit_legs_right_triangle", "map_grid", "Triangle",
]

THETA_MARGIN = 0.05


@dataclass(frozen=True)
class MapConfig:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-13
    max_levels: int = 12
    min_clearance: float = 0.05
    path_radius_min: float = 0.5
    path_radius_max: float = 0.8
    max_arc: float = math.pi / 8
    gl_nodes: int = 20
    max_bisections: int = 30


DEFAULT_MAP_CONFIG = MapConfig()


@dataclass(frozen=True)
class ExteriorMapSpec:
    prevertices: tuple
    exponents: tuple
    basepoint: complex
    scale: complex
    target_vertices: tuple
    shift: complex = 0j
    theta: float = None  # apex angle, isosceles maps only

    def __post_init__(self):
        pv = tuple(complex(a) for a in self.prevertices)
        mu = tuple(float(m) for m in self.exponents)
        object.__setattr__(self, "prevertices", pv)
        object.__setattr__(self, "exponents", mu)
        object.__setattr__(self, "basepoint", complex(self.basepoint))
        object.__setattr__(self, "scale", complex(self.scale))
        object.__setattr__(self, "shift", complex(self.shift))
        object.__setattr__(self, "target_vertices",
                           tuple(complex(v) for v in self.target_vertices))
        if len(pv) != 3 or len(mu) != 3:
            raise DomainError("triangle maps need three prevertices and exponents")
        if any(abs(abs(a) - 1.0) > 1e-12 for a in pv):
            raise DomainError(f"prevertices must lie on the unit circle: {pv}")
        if abs(sum(mu) - 2.0) > 1e-12:
            raise DomainError(f"exponents must sum to 2: {mu}")
        if not all(0.0 < m < 1.0 for m in mu):
            raise DomainError(f"exponents must lie in (0, 1): {mu}")
        if residue(pv, mu) > 1e-10:
            raise DomainError("prevertices violate sum mu_k / a_k = 0")
        if self.basepoint not in pv:
            raise DomainError("basepoint must be one of the prevertices")

    def with_scale(self, scale, shift=0j):
        return replace(self, scale=scale, shift=shift)


def residue(prevertices, exponents):
    return abs(sum(m / a for m, a in zip(exponents, prevertices)))


# ---------------------------------------------------------------- exponents


def exponents_from_triangle(tri):
    """Exponents mu_k = 1 - angle_k / pi; they sum to 2."""
    return tuple(1.0 - ang / math.pi for ang in tri.angles())


def _check_theta(theta, allow_extreme):
    lo = 0.0 if allow_extreme else THETA_MARGIN
    if not lo < theta < math.pi - lo:
        raise DomainError(
            f"apex angle {theta} outside ({lo}, pi - {lo}); pass allow_extreme=True to override")


def isosceles_exponents(theta):
    pi = math.pi
    return ((pi - theta) / pi, (pi + theta) / (2 * pi), (pi + theta) / (2 * pi))


def isosceles_prevertices(theta):
    """(-1, a2, a3) with a2, a3 = (pi - theta +- 2i sqrt(pi theta)) / (pi + theta)."""
    if not 0.0 < theta < math.pi:
        raise DomainError("apex angle must lie in (0, pi)")
    pi = math.pi
    re = (pi - theta) / (pi + theta)
    im = 2.0 * math.sqrt(pi * theta) / (pi + theta)
    return (-1.0 + 0j, complex(re, im), complex(re, -im))


def _ccw_after(a, ref):
    """Counterclockwise angle from ``ref`` to ``a`` on the circle, in [0, 2 pi)."""
    return cmath.phase(a / ref) % (2.0 * math.pi)


def solve_prevertices(mu, fixed=1.0, mirror=False, tol=1e-13, max_iter=60):
    """Prevertices (fixed, a2, a3) on the unit circle with sum mu_k / a_k = 0.

    Damped Newton in the angles of a2 and a3, started from the isosceles
    closed form whose apex exponent equals mu[0], rotated onto ``fixed``.

    The constraint has two mirror-image solutions.  By default the one is
    returned for which a counterclockwise walk round the circle from a1
    meets a3 before a2; this is the order that sends a counterclockwise
    target triangle's vertices to a1, a2, a3.  ``mirror=True`` returns the
    reflected solution.

    Raises
    ------
    ConvergenceError
        If Newton does not reach ``tol`` within ``max_iter`` steps.
    """
    mu1, mu2, mu3 = (float(m) for m in mu)
    fixed = complex(fixed)
    if abs(abs(fixed) - 1.0) > 1e-12:
        raise DomainError("fixed prevertex must lie on the unit circle")
    if abs(mu1 + mu2 + mu3 - 2.0) > 1e-12 or not all(0 < m < 1 for m in (mu1, mu2, mu3)):
        raise DomainError(f"invalid exponent triple {mu}")
    _, b2, b3 = isosceles_prevertices(math.pi * (1.0 - mu1))
    rot = -fixed
    phi = np.array([cmath.phase(rot * b2), cmath.phase(rot * b3)])

    def resid(p):
        val = mu1 / fixed + mu2 * cmath.exp(-1j * p[0]) + mu3 * cmath.exp(-1j * p[1])
        return np.array([val.real, val.imag])

    r = resid(phi)
    for _ in range(max_iter):
        norm = np.linalg.norm(r)
        if norm <= tol:
            break
        e2 = mu2 * cmath.exp(-1j * phi[0])
        e3 = mu3 * cmath.exp(-1j * phi[1])
        # d/dphi of mu e^{-i phi} is -i mu e^{-i phi}
        jac = np.array([[(-1j * e2).real, (-1j * e3).real],
                        [(-1j * e2).imag, (-1j * e3).imag]])
        step = np.linalg.solve(jac, -r)
        lam = 1.0
        while lam > 1e-6:
            trial = phi + lam * step
            rt = resid(trial)
            if np.linalg.norm(rt) < norm:
                break
            lam *= 0.5
        phi, r = trial, rt
    else:
        if np.linalg.norm(r) > tol:
            raise ConvergenceError("prevertex Newton iteration did not converge")
    if np.linalg.norm(r) > tol:
        raise ConvergenceError("prevertex Newton iteration did not converge")
    a2, a3 = cmath.exp(1j * phi[0]), cmath.exp(1j * phi[1])
    reversed_order = _ccw_after(a3, fixed) > _ccw_after(a2, fixed)
    if reversed_order != mirror:
        # reflect across the diameter through the fixed point
        a2 = fixed * fixed * a2.conjugate()
        a3 = fixed * fixed * a3.conjugate()
    return (fixed, a2, a3)


# ---------------------------------------------------------------- paths


@dataclass(frozen=True)
class Segment:
    """A straight segment or a circular arc about the origin."""

    kind: str  # "line" or "arc"
    start: complex
    end: complex
    radius: float = 0.0
    phi0: float = 0.0
    dphi: float = 0.0

    @classmethod
    def line(cls, start, end):
        return cls("line", complex(start), complex(end))

    @classmethod
    def arc(cls, radius, phi0, dphi):
        return cls("arc", radius * cmath.exp(1j * phi0),
                   radius * cmath.exp(1j * (phi0 + dphi)), radius, phi0, dphi)

    def split(self, t):
        if self.kind == "line":
            mid = self.start + (self.end - self.start) * t
            return Segment.line(self.start, mid), Segment.line(mid, self.end)
        return (Segment.arc(self.radius, self.phi0, self.dphi * t),
                Segment.arc(self.radius, self.phi0 + self.dphi * t, self.dphi * (1 - t)))

    def nodes(self, t, tc):
        """Points, derivatives d zeta/dt, and offsets from both endpoints."""
        if self.kind == "line":
            d = self.end - self.start
            zeta = np.where(t < 0.5, self.start + d * t, self.end - d * tc)
            return zeta, np.full_like(zeta, d), d * t, -d * tc
        ang_s = self.dphi * t
        ang_e = -self.dphi * tc
        from_start = self.start * 2j * np.sin(0.5 * ang_s) * np.exp(0.5j * ang_s)
        from_end = self.end * 2j * np.sin(0.5 * ang_e) * np.exp(0.5j * ang_e)
        zeta = np.where(t < 0.5, self.start + from_start, self.end + from_end)
        return zeta, 1j * self.dphi * zeta, from_start, from_end

    def length(self):
        if self.kind == "line":
            return abs(self.end - self.start)
        return abs(self.dphi) * self.radius

    def clearance(self):
        """Smallest |zeta| on the segment."""
        if self.kind == "arc":
            return self.radius
        d = self.end - self.start
        if d == 0:
            return abs(self.start)
        t = min(1.0, max(0.0, -(self.start.conjugate() * d).real / abs(d) ** 2))
        return abs(self.start + t * d)


@dataclass(frozen=True)
class PathSpec:
    segments: tuple
    start: complex
    end: complex


def build_path(z, z0, cfg=DEFAULT_MAP_CONFIG):
    """Radial segment from z0 to radius r*, arc at r*, radial segment to z.

    r* = |z| clipped to [path_radius_min, path_radius_max] so the arc keeps
    away from both the origin and the other prevertices.
    """
    z = complex(z)
    z0 = complex(z0)
    if abs(z) > 1.0 + 1e-14:
        raise DomainError(f"{z} lies outside the closed unit disk")
    if abs(z) < cfg.min_clearance:
        raise DomainError(f"|z| = {abs(z)} is closer than {cfg.min_clearance} to the pole")
    if z == z0:
        return PathSpec((), z0, z)
    rstar = min(max(abs(z), cfg.path_radius_min), cfg.path_radius_max)
    phi0 = cmath.phase(z0)
    dphi = (cmath.phase(z) - phi0 + math.pi) % (2 * math.pi) - math.pi
    if dphi == -math.pi:
        dphi = math.pi
    segs = []
    p = rstar * cmath.exp(1j * phi0)
    if abs(z0 - p) > 0:
        segs.append(Segment.line(z0, p))
    if dphi != 0.0:
        segs.append(Segment.arc(rstar, phi0, dphi))
        p = segs[-1].end
    if abs(z - p) > 1e-15:
        segs.append(Segment.line(p, z))
    return PathSpec(tuple(segs), z0, z)


# ---------------------------------------------------------------- branches


class BranchTracker:
    """Continues arg(zeta - a_k) for each prevertex along a path.

    The reference at the basepoint is the argument of the inward normal,
    arg(-a_k), corrected by the principal Arg(1 - z0/a_k).  At a prevertex
    the direction -a_k stands in for the vanishing difference, which is
    the limit along any approach from inside the disk.
    """

    max_step = 0.5 * math.pi

    def __init__(self, prevertices, basepoint):
        self.prevertices = np.asarray(prevertices, dtype=complex)
        self.point = complex(basepoint)
        d = self._diff(self.point)
        self.args = np.angle(-self.prevertices) + np.angle(d / -self.prevertices)

    def _diff(self, p):
        d = p - self.prevertices
        return np.where(d == 0, -self.prevertices, d)

    def increments(self, p):
        return np.angle(self._diff(complex(p)) / self._diff(self.point))

    def advance(self, p):
        inc = self.increments(p)
        if np.any(np.abs(inc) >= self.max_step):
            raise BranchStepError(
                f"argument step {np.max(np.abs(inc)):.3f} >= pi/2 moving to {p}")
        self.args = self.args + inc
        self.point = complex(p)
        return self.args.copy()

    def args_along(self, points):
        """Arguments at each of ``points`` (a sequence continuing the path)."""
        pts = np.asarray(points, dtype=complex)
        diffs = pts[:, None] - self.prevertices[None, :]
        diffs = np.where(diffs == 0, -self.prevertices[None, :], diffs)
        prev = np.vstack([self._diff(self.point)[None, :], diffs[:-1]])
        inc = np.angle(diffs / prev)
        if np.any(np.abs(inc) >= self.max_step):
            raise BranchStepError("argument step >= pi/2 along point sequence")
        args = self.args[None, :] + np.cumsum(inc, axis=0)
        self.args = args[-1].copy()
        self.point = complex(pts[-1])
        return args


def sc_integrand(zeta, spec):
    """prod (zeta - a_k)^mu_k / zeta^2 on the single-valued branch in the disk.

    This uses arg(zeta - a_k) = arg(-a_k) + Arg(1 - zeta/a_k), which is what
    ``BranchTracker`` produces along any path inside the disk.
    """
    zeta = np.asarray(zeta, dtype=complex)
    acc = np.zeros_like(zeta)
    with np.errstate(divide="ignore"):
        for a, m in zip(spec.prevertices, spec.exponents):
            acc = acc + m * (1j * cmath.phase(-a) + np.log(1.0 - zeta / a))
    return np.exp(acc) / zeta ** 2


def _piece_integrand(seg, spec, anchor_args, anchor_at_end):
    pv = spec.prevertices
    mu = spec.exponents

    def f(t, tc):
        zeta, dz, off_s, off_e = seg.nodes(t, tc)
        acc = np.zeros_like(zeta)
        for k, (a, m) in enumerate(zip(pv, mu)):
            if a == seg.start:
                d = off_s
            elif a == seg.end:
                d = off_e
            else:
                d = zeta - a
            ref = seg.end if anchor_at_end else seg.start
            ref_d = ref - a
            if ref_d == 0:
                ref_d = -a
            with np.errstate(divide="ignore", invalid="ignore"):
                ang = anchor_args[k] + np.angle(d / ref_d)
                logmag = np.log(np.abs(d))
            acc = acc + m * (logmag + 1j * ang)
        return np.exp(acc) / zeta ** 2 * dz

    return f


def _subdivide(seg, cfg):
    """Cut arcs into pieces no longer than ``cfg.max_arc`` radians."""
    if seg.kind != "arc":
        return [seg]
    n = max(1, int(math.ceil(abs(seg.dphi) / cfg.max_arc)))
    return [Segment.arc(seg.radius, seg.phi0 + seg.dphi * j / n, seg.dphi / n)
            for j in range(n)]


def _walk(segments, spec, tracker, cfg, integrate=True):
    """Advance ``tracker`` over ``segments``, bisecting any piece whose
    argument step would reach pi/2, and integrate f' over them."""
    total = 0j
    err = 0.0
    stack = []
    for seg in reversed(segments):
        stack.extend(reversed(_subdivide(seg, cfg)))
    splits = 0
    while stack:
        seg = stack.pop()
        inc = tracker.increments(seg.end)
        if np.any(np.abs(inc) >= BranchTracker.max_step):
            splits += 1
            if splits > cfg.max_bisections:
                raise BranchStepError("could not keep argument steps below pi/2")
            first, second = seg.split(0.5)
            stack.append(second)
            stack.append(first)
            continue
        start_args = tracker.args.copy()
        end_args = tracker.advance(seg.end)
        if not integrate:
            continue
        if seg.start in spec.prevertices:
            f = _piece_integrand(seg, spec, end_args, anchor_at_end=True)
        else:
            f = _piece_integrand(seg, spec, start_args, anchor_at_end=False)
        val, er = tanh_sinh(f, abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol,
                            max_levels=cfg.max_levels)
        total += complex(val)
        err += float(er)
    return total, err


def f_numeric(z, spec, cfg=DEFAULT_MAP_CONFIG, return_error=False):
    """f(z) by quadrature along ``build_path(z, spec.basepoint)``.

    ``z`` may lie on the unit circle, including at a prevertex; tanh-sinh
    clusters nodes at both ends of each piece, so the bounded
    (zeta - a_k)^mu_k endpoint behaviour needs no special grading.
    """
    path = build_path(z, spec.basepoint, cfg)
    tracker = BranchTracker(spec.prevertices, spec.basepoint)
    val, err = _walk(path.segments, spec, tracker, cfg)
    return (val, err) if return_error else val


def f_polyline(points, spec, start_value=None, arcs=False, cfg=DEFAULT_MAP_CONFIG):
    """f at each point of a chain, integrating piece by piece from the first.

    With ``arcs=True`` consecutive points are joined by arcs about the
    origin (they must share a radius); otherwise by straight chords.  The
    chain must stay strictly inside the disk.  Gauss-Legendre nodes are used
    on every piece, with arguments anchored at each piece's start.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    if np.max(np.abs(pts)) >= 1.0:
        raise DomainError("polyline evaluation needs points strictly inside the disk")
    if np.min(np.abs(pts)) < cfg.min_clearance:
        raise DomainError("polyline passes too close to the pole")
    if not arcs and len(pts) > 1:
        d = pts[1:] - pts[:-1]
        t = np.clip(-np.real(np.conj(d) * pts[:-1]) / np.maximum(np.abs(d) ** 2, 1e-300), 0, 1)
        if np.min(np.abs(pts[:-1] + t * d)) < cfg.min_clearance:
            raise DomainError("a polyline chord passes too close to the pole")
    if start_value is None:
        start_value = f_numeric(pts[0], spec, cfg)
    if len(pts) == 1:
        return np.array([start_value])
    tracker = BranchTracker(spec.prevertices, spec.basepoint)
    _walk(build_path(pts[0], spec.basepoint, cfg).segments, spec, tracker, cfg,
          integrate=False)
    first_args = tracker.args.copy()
    node_args = tracker.args_along(pts[1:])
    start_args = np.vstack([first_args[None, :], node_args[:-1]])
    x, w = gauss_legendre(cfg.gl_nodes)
    p0 = pts[:-1, None]
    p1 = pts[1:, None]
    if arcs:
        dphi = np.angle(pts[1:] / pts[:-1])[:, None]
        zeta = p0 * np.exp(1j * dphi * x[None, :])
        dz = 1j * dphi * zeta
    else:
        zeta = p0 + (p1 - p0) * x[None, :]
        dz = np.broadcast_to(p1 - p0, zeta.shape)
    acc = np.zeros_like(zeta)
    for k, (a, m) in enumerate(zip(spec.prevertices, spec.exponents)):
        d = zeta - a
        ang = start_args[:, k:k + 1] + np.angle(d / (p0 - a))
        acc = acc + m * (np.log(np.abs(d)) + 1j * ang)
    pieces = (np.exp(acc) / zeta ** 2 * dz) @ w
    return np.concatenate([[start_value], start_value + np.cumsum(pieces)])


# ---------------------------------------------------------------- closed form


def f_closed_isosceles(z, theta, cfg=F1_CONFIG):
    """f(z) for the isosceles map through its Appell F1 representation.

    Raises
    ------
    DomainError
        When an F1 argument is outside both evaluators' domains (the
        caller should fall back to ``f_numeric``).
    """
    z = complex(z)
    if not 0.0 < theta < math.pi:
        raise DomainError("apex angle must lie in (0, pi)")
    if abs(z) > 1.0 + 1e-14 or z == 0:
        raise DomainError("z must lie in the closed unit disk minus the origin")
    pi = math.pi
    sp, st = math.sqrt(pi), math.sqrt(theta)
    xi = (sp - 1j * st) * (z + 1) / (2 * sp)
    eta = (sp + 1j * st) * (z + 1) / (2 * sp)
    quad = (pi * (z - 1) ** 2 + theta * (z + 1) ** 2) / (pi + theta)
    p_plus = (pi + theta) / (2 * pi)
    p_minus = (pi - theta) / (2 * pi)
    phi = quad ** p_plus
    psi = quad ** p_minus
    delta = ((-sp * (z - 1) - 1j * st * (z + 1)) ** p_minus
             * (-sp * (z - 1) + 1j * st * (z + 1)) ** p_minus)
    a = 1.0 - theta / pi
    first = appell_f1(AppellArgs(a, p_minus, p_minus, a + 1.0, xi, eta), cfg).value
    second = appell_f1(AppellArgs(a + 1.0, p_minus, p_minus, a + 2.0, eta, xi), cfg).value
    pref = 2.0 ** (theta / pi) * pi ** p_plus / (2 * pi ** 2 + pi * theta - theta ** 2)
    bracket = -2.0 * (2 * pi - theta) * first + (pi + theta) * (z + 1) * second
    return (z + 1) ** a * (-phi / z + pref * delta / psi * bracket)


def closed_form_kappa_right_isosceles():
    """3^(3/4) Gamma(1/4)^2 / (2^(7/2) pi^(3/2))."""
    return 3 ** 0.75 * gamma_real(0.25) ** 2 / (2 ** 3.5 * math.pi ** 1.5)


def closed_form_lambda_right_isosceles(cfg=F1_CONFIG):
    """Outer conformal center of the right isosceles triangle with unit legs."""
    x = (2 - 1j * math.sqrt(2)) / 4
    y = (2 + 1j * math.sqrt(2)) / 4
    first = appell_f1(AppellArgs(0.5, 0.25, 0.25, 1.5, x, y), cfg).value
    second = appell_f1(AppellArgs(1.5, 0.25, 0.25, 2.5, y, x), cfg).value
    kappa = closed_form_kappa_right_isosceles()
    return kappa * 2 ** 1.25 / 3 ** 0.75 * (2 * first - second)


def outer_center_unit_legs_right_triangle(cfg=F1_CONFIG):
    """Outer center of the triangle 0, 1, i: the right isosceles center rotated by pi/4."""
    return (1 + 1j) / math.sqrt(2) * closed_form_lambda_right_isosceles(cfg)


# ---------------------------------------------------------------- maps


def make_isosceles_map(theta, cfg=DEFAULT_MAP_CONFIG, allow_extreme=False):
    """Exterior map onto T_theta: apex 0, unit legs at angles -+theta/2.

    Prevertices (-1, a2, a3) go to (0, e^{-i theta/2}, e^{i theta/2}); the
    scale -2 sin(theta/2) / (Im f(a2) - Im f(a3)) is a negative real.
    """
    _check_theta(theta, allow_extreme)
    pv = isosceles_prevertices(theta)
    mu = isosceles_exponents(theta)
    lo = cmath.exp(-0.5j * theta)
    raw = ExteriorMapSpec(pv, mu, pv[0], 1.0, (0j, lo, lo.conjugate()), theta=theta)
    f2 = f_numeric(pv[1], raw, cfg)
    f3 = f_numeric(pv[2], raw, cfg)
    scale = -2.0 * math.sin(0.5 * theta) / (f2.imag - f3.imag)
    return raw.with_scale(scale)


def make_unit_legs_right_map(cfg=DEFAULT_MAP_CONFIG):
    """Map onto the triangle 0, 1, i (the right isosceles map rotated by pi/4)."""
    base = make_isosceles_map(0.5 * math.pi, cfg)
    rot = cmath.exp(0.25j * math.pi)
    verts = tuple(rot * v for v in base.target_vertices)
    return replace(base, scale=rot * base.scale, target_vertices=verts, theta=None)


def make_general_map(tri, fixed=1.0, cfg=DEFAULT_MAP_CONFIG, vertex_tol=1e-6):
    """Exterior map onto a triangle with counterclockwise vertices.

    Prevertices come from ``solve_prevertices`` with a1 = ``fixed``; scale
    and shift are fixed by g(a1) = v1 and g(a2) = v2, and g(a3) = v3 is
    checked to ``vertex_tol``.
    """
    if tri.vertices is None:
        tri = Triangle.from_sides(*tri.sides)
    if not tri.is_counterclockwise():
        raise DomainError("target vertices must be in counterclockwise order")
    mu = exponents_from_triangle(tri)
    pv = solve_prevertices(mu, fixed)
    raw = ExteriorMapSpec(pv, mu, pv[0], 1.0, tri.vertices)
    v1, v2, v3 = tri.vertices
    f2 = f_numeric(pv[1], raw, cfg)
    scale = (v2 - v1) / f2
    spec = raw.with_scale(scale, v1)
    miss = abs(evaluate_map(pv[2], spec, cfg) - v3)
    if miss > vertex_tol * max(1.0, max(tri.sides)):
        raise NumericalError(f"third vertex missed by {miss:.3e}")
    return spec


def evaluate_map(z, spec, cfg=DEFAULT_MAP_CONFIG):
    """g(z) = scale * f(z) + shift."""
    return spec.scale * f_numeric(z, spec, cfg) + spec.shift


def vertex_images(spec, delta=1e-6, cfg=DEFAULT_MAP_CONFIG):
    """g((1 - delta) a_k) for each prevertex."""
    return tuple(evaluate_map((1.0 - delta) * a, spec, cfg) for a in spec.prevertices)


# ---------------------------------------------------------------- Laurent


@dataclass(frozen=True)
class LaurentSummary:
    kappa: float
    center: complex
    leading: complex  # coefficient of 1/z
    higher: tuple  # coefficients of z^1 .. z^n
    radius_used: float
    node_count: int
    error: float
    closure: float  # |f after one loop - f at start|; zero residue makes this vanish


def circle_values(spec, r, n, cfg=DEFAULT_MAP_CONFIG):
    """g at r e^{2 pi i j / n}, j = 0..n-1, and the loop closure defect."""
    pts = r * np.exp(2j * np.pi * np.arange(n + 1) / n)
    pts[-1] = pts[0]
    f = f_polyline(pts, spec, arcs=True, cfg=cfg)
    closure = abs(f[-1] - f[0])
    return spec.scale * f[:-1] + spec.shift, pts[:-1], closure


def laurent_coefficients(values, points, r, n_higher=0):
    """Trapezoidal Laurent coefficients (c_{-1}, c_0, c_1..c_n) from circle samples."""
    c_m1 = np.mean(values * points)
    c0 = np.mean(values)
    higher = tuple(complex(np.mean(values * points ** (-k))) for k in range(1, n_higher + 1))
    return complex(c_m1), complex(c0), higher


def laurent_summary(spec, r=0.5, n=64, n_higher=0, tol=1e-10, max_doublings=8,
                    cfg=DEFAULT_MAP_CONFIG, sampler=None):
    """kappa = |c_{-1}| and the outer center c_0 of g at the origin.

    The node count doubles from ``n`` until successive kappa and center
    agree within ``tol``.  ``sampler(r, n)`` may replace the SC evaluation
    with any map given as circle samples ``(values, points, closure)``.

    Raises
    ------
    ConvergenceError
        If ``max_doublings`` doublings do not reach ``tol``.
    """
    if not 0.05 < r < 1.0:
        raise DomainError("contour radius must lie in (0.05, 1)")
    if n < 64 or n & (n - 1):
        raise DomainError("node count must be a power of two >= 64")
    if sampler is None:
        def sampler(r_, n_):
            return circle_values(spec, r_, n_, cfg)
    prev = None
    for _ in range(max_doublings + 1):
        values, points, closure = sampler(r, n)
        c_m1, c0, higher = laurent_coefficients(values, points, r, n_higher)
        if prev is not None:
            err = max(abs(abs(c_m1) - abs(prev[0])), abs(c0 - prev[1]))
            if err <= tol:
                return LaurentSummary(abs(c_m1), c0, c_m1, higher, r, n, err, closure)
        prev = (c_m1, c0)
        n *= 2
    raise ConvergenceError("Laurent coefficients did not settle")


# ---------------------------------------------------------------- grids


@dataclass(frozen=True)
class GridData:
    radii: np.ndarray
    circle_t: np.ndarray
    circles: list  # one complex array of images per radius
    ray_angles: np.ndarray
    ray_radii: np.ndarray
    rays: list  # one complex array of images per angle


def grid_radii(circles, floor=0.08):
    """Evenly spaced radii j/(circles+1), shifted up if the innermost is below ``floor``."""
    if circles < 1:
        raise DomainError("need at least one circle")
    radii = np.arange(1, circles + 1) / (circles + 1)
    if radii[0] < floor:
        radii = np.linspace(floor, radii[-1], circles)
    return radii


def map_grid(spec, circles=10, rays=24, samples=512, cfg=DEFAULT_MAP_CONFIG):
    """Images of concentric circles and radial rays under g."""
    if samples < 64:
        raise DomainError("need at least 64 samples per curve")
    if rays < 0:
        raise DomainError("ray count must be non-negative")
    radii = grid_radii(circles)
    t = 2 * np.pi * np.arange(samples) / samples
    circle_imgs = []
    for r in radii:
        pts = r * np.exp(1j * np.append(t, 0.0))
        f = f_polyline(pts, spec, arcs=True, cfg=cfg)[:-1]
        circle_imgs.append(spec.scale * f + spec.shift)
    angles = 2 * np.pi * np.arange(rays) / rays if rays else np.empty(0)
    ray_r = np.linspace(radii[0], radii[-1], samples)
    ray_imgs = []
    for ang in angles:
        pts = ray_r * np.exp(1j * ang)
        ray_imgs.append(spec.scale * f_polyline(pts, spec, cfg=cfg) + spec.shift)
    return GridData(radii, t, circle_imgs, angles, ray_r, ray_imgs)

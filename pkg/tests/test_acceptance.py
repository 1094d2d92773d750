"""Acceptance criteria, one test per criterion (split where a criterion has
independent parts).  Each test prints a PASS/FAIL line with the measured
deviation so the run log doubles as a report."""

import cmath
import csv
import math
import time

import numpy as np
import pytest

from capmap import capacity, cli, halfdisk, sc_exterior, specfun
from capmap.geometry import Triangle
from capmap.sc_exterior import (
    f_closed_isosceles, f_numeric, laurent_summary, make_general_map,
    make_isosceles_map, residue, sc_integrand, solve_prevertices, vertex_images,
)
from capmap.specfun import AppellArgs, appell_f1, hyp2f1_series

SQRT3 = math.sqrt(3.0)
V_30_60_90 = (0j, 1 + 0j, 1j * SQRT3)
V_6_9_13 = (0j, 6 + 0j, complex(-13 / 3, 4 * math.sqrt(35) / 3))
THETA_GRID = (math.pi / 6, math.pi / 3, math.pi / 2, 2.0, 2.5360873621)


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        return ok
    return emit


@pytest.fixture(scope="module")
def right_iso_map():
    return make_isosceles_map(math.pi / 2)


def test_c01_halfdisk_inner_center(report):
    res = halfdisk.inner_center()
    dy = abs(res.y0 - 0.4858682717566457)
    dr = abs(res.max_inner_radius - 0.6005662120015552)
    assert report("C1 half-disk inner center", dy <= 1e-9 and dr <= 1e-9,
                  f"|dy0|={dy:.2e} |dradius|={dr:.2e} (tol 1e-9)")


def test_c02_halfdisk_outer_data(report):
    res = halfdisk.outer_summary_halfdisk(r=0.5)
    dk = abs(res.outer_radius - 0.7698003589195010)
    dc = abs(res.outer_center - 0.3849001794597505j)
    a = halfdisk.outer_summary_halfdisk(r=0.3)
    b = halfdisk.outer_summary_halfdisk(r=0.7)
    dr = max(abs(a.outer_radius - b.outer_radius), abs(a.outer_center - b.outer_center))
    assert report("C2 half-disk outer radius/center", max(dk, dc, dr) <= 1e-9,
                  f"|dkappa|={dk:.2e} |dcenter|={dc:.2e} r=0.3 vs 0.7: {dr:.2e} (tol 1e-9)")


def _scale_coefficient(spec):
    raw = spec.with_scale(1.0)
    f2 = f_numeric(spec.prevertices[1], raw)
    f3 = f_numeric(spec.prevertices[2], raw)
    return -math.sqrt(2.0) / (f2.imag - f3.imag)


def test_c03a_scale_constant_signed(report, right_iso_map):
    """The literal signed statement.  The integral as written yields the
    negative of the printed value (the map needs a rotation by pi); this
    part is expected to fail, see the decisions ledger."""
    coef = _scale_coefficient(right_iso_map)
    d = abs(coef - 0.4756344438799819)
    assert report("C3a signed coefficient = +0.4756344438799819", d <= 1e-9,
                  f"computed {coef!r}, |diff|={d:.2e} (tol 1e-9)")


def test_c03b_scale_constant_magnitude_and_closed_form(report, right_iso_map):
    coef = _scale_coefficient(right_iso_map)
    d = abs(abs(coef) - 0.4756344438799819)
    dc = abs(abs(coef) - sc_exterior.closed_form_kappa_right_isosceles())
    assert report("C3b |coefficient| and Gamma(1/4) closed form", d <= 1e-9 and dc <= 1e-10,
                  f"|coef|={abs(coef)!r} |diff|={d:.2e} (1e-9), vs closed form {dc:.2e} (1e-10)")


def test_c04_lambda_right_isosceles(report, right_iso_map):
    lam = sc_exterior.closed_form_lambda_right_isosceles()
    d1 = abs(lam - 0.5045039334500261)
    center = laurent_summary(right_iso_map).center
    d2 = abs(center - lam)
    assert report("C4 lambda closed form and Laurent center", d1 <= 1e-10 and d2 <= 1e-9,
                  f"closed form {lam.real!r} diff {d1:.2e} (1e-10); Laurent diff {d2:.2e} (1e-9)")


def test_c05_unit_legs_right_center(report):
    c = sc_exterior.outer_center_unit_legs_right_triangle()
    d = max(abs(c.real - 0.3567381524778001), abs(c.imag - 0.3567381524778001))
    lc = laurent_summary(sc_exterior.make_unit_legs_right_map()).center
    dl = max(abs(lc.real - 0.3567381524778001), abs(lc.imag - 0.3567381524778001))
    assert report("C5 outer center of triangle 0,1,i", d <= 1e-9 and dl <= 1e-9,
                  f"closed form max component diff {d:.2e}, Laurent {dl:.2e} (tol 1e-9)")


def test_c06_equilateral_centroid(report):
    c = laurent_summary(make_isosceles_map(math.pi / 3)).center
    d = abs(c - 1 / SQRT3)
    assert report("C6 equilateral center = 1/sqrt(3)", d <= 1e-9, f"|diff|={d:.2e} (tol 1e-9)")


def test_c07a_haegi_right_isosceles(report):
    k = capacity.haegi_capacity(Triangle((1.0, 1.0, math.sqrt(2.0)))).kappa
    d = abs(k - 0.4756344438799819)
    assert report("C7a Haegi (1,1,sqrt2)", d <= 1e-12, f"{k!r} |diff|={d:.2e}")


def test_c07b_haegi_30_60_90(report):
    """Printed value 0.3779137429709558.  The triangle (1, sqrt3, 2) contains
    the triangle 0, 1, i whose capacity is 0.4756..., so by monotonicity of
    capacity the printed value cannot be right; expected to fail."""
    k = capacity.haegi_capacity(Triangle((1.0, SQRT3, 2.0))).kappa
    d = abs(k - 0.3779137429709558)
    assert report("C7b Haegi (1,sqrt3,2) = 0.3779137429709558", d <= 1e-12,
                  f"computed {k!r}, |diff|={d:.2e}; printed value equals computed/sqrt3 "
                  f"to {abs(k / SQRT3 - 0.3779137429709558):.1e}")


def test_c07c_haegi_6_9_13(report):
    k = capacity.haegi_capacity(Triangle((6.0, 9.0, 13.0))).kappa
    d = abs(k - 3.805336)
    assert report("C7c Haegi (6,9,13)", d <= 5e-6, f"{k!r} |diff|={d:.2e} (tol 5e-6)")


def test_c08_theta_star(report):
    theta, kappa = capacity.maximize_isosceles_capacity()
    d = abs(theta - 2.5360873621)
    assert report("C8 maximizing apex angle", d <= 1e-8,
                  f"theta*={theta!r} |diff|={d:.2e} (tol 1e-8), kappa*={kappa!r}")


def test_c09a_prevertices_30_60_90(report):
    """The printed prevertices belong to the mirror-image labelling; the
    solver returns that branch of the two conjugate solutions on request."""
    mu = (0.5, 2 / 3, 5 / 6)
    a = solve_prevertices(mu, 1.0, mirror=True)
    d = max(abs(a[1] - 1j), abs(a[2] - complex(-0.6, -0.8)))
    assert report("C9a 30-60-90 prevertices", d <= 1e-10, f"max |diff|={d:.2e} (tol 1e-10)")


def test_c09b_prevertices_6_9_13(report):
    tri = Triangle.from_vertices(V_6_9_13)
    mu = sc_exterior.exponents_from_triangle(tri)
    listed = (0.659, 0.207, 0.132)  # interior angle / pi, truncated to 3 decimals
    dmu = max(abs((1 - m) - p) for m, p in zip(mu, listed))
    a = solve_prevertices(mu, 1.0)
    d = max(abs(a[1] - complex(0.0163, -0.9998)), abs(a[2] - complex(-0.4069, 0.9134)))
    assert report("C9b 6-9-13 prevertices", d <= 5e-4 and dmu < 1e-3,
                  f"max |diff|={d:.2e} (tol 5e-4); exponent listing diff {dmu:.2e} (< 1e-3)")


def test_c10_sc_haegi_consistency(report):
    t0 = time.perf_counter()
    worst_iso = 0.0
    for theta in THETA_GRID:
        k_sc = laurent_summary(make_isosceles_map(theta)).kappa
        k_h = capacity.haegi_capacity(Triangle.isosceles(theta)).kappa
        worst_iso = max(worst_iso, abs(k_sc - k_h))
    worst_gen = 0.0
    for verts in (V_30_60_90, V_6_9_13):
        tri = Triangle.from_vertices(verts)
        k_sc = laurent_summary(make_general_map(tri)).kappa
        worst_gen = max(worst_gen, abs(k_sc - capacity.haegi_capacity(tri).kappa))
    elapsed = time.perf_counter() - t0
    ok = worst_iso <= 1e-8 and worst_gen <= 1e-5 and elapsed < 120
    assert report("C10 Laurent kappa vs Haegi", ok,
                  f"isosceles {worst_iso:.2e} (1e-8), addendum {worst_gen:.2e} (1e-5), "
                  f"{elapsed:.1f}s (< 120s)")


def test_c11_closed_form_vs_quadrature(report):
    rng = np.random.default_rng(11)
    worst_val, worst_der = 0.0, 0.0
    h = 1e-5
    for theta in (math.pi / 6, math.pi / 3, math.pi / 2, 2.0, 2.8):
        spec = make_isosceles_map(theta)
        for k in range(12):
            z = (0.3 + 0.65 * rng.random()) * cmath.exp(2j * math.pi * rng.random())
            worst_val = max(worst_val, abs(f_closed_isosceles(z, theta) - f_numeric(z, spec)))
            if k < 10:
                fd = (f_closed_isosceles(z + h, theta) - f_closed_isosceles(z - h, theta)) / (2 * h)
                ig = sc_integrand(z, spec)
                worst_der = max(worst_der, abs(fd - ig) / abs(ig))
    assert report("C11 closed form vs quadrature", worst_val <= 1e-9 and worst_der <= 1e-6,
                  f"values {worst_val:.2e} (1e-9), derivative rel {worst_der:.2e} (1e-6)")


def _random_triangle(rng, margin=0.05):
    while True:
        al, be = rng.uniform(margin, math.pi - margin, 2)
        ga = math.pi - al - be
        if ga > margin:
            s = (math.sin(al), math.sin(be), math.sin(ga))
            size = rng.uniform(0.2, 5.0)
            return Triangle(tuple(x * size / max(s) for x in s))


def test_c12_property_suites(report):
    rng = np.random.default_rng(12)
    # F1 symmetry, normalization, reduction
    f1_worst = 0.0
    for _ in range(100):
        a = rng.uniform(0.1, 2.0)
        b, bp = rng.uniform(-1.0, 1.5, 2)
        c = a + rng.uniform(0.1, 2.0)
        x, y = (rng.uniform(0, 0.8) * cmath.exp(2j * math.pi * rng.random()) for _ in range(2))
        v = appell_f1(AppellArgs(a, b, bp, c, x, y)).value
        vs = appell_f1(AppellArgs(a, b, bp, c, x, y).swapped()).value
        f1_worst = max(f1_worst, abs(v - vs) / (1 + abs(v)),
                       abs(appell_f1(AppellArgs(a, b, bp, c, 0, 0)).value - 1),
                       abs(appell_f1(AppellArgs(a, b, bp, c, x, 0)).value
                           - hyp2f1_series(a, b, c, x)))
    # exponent sum and residue constraint
    inv_worst = 0.0
    for _ in range(20):
        tri = _random_triangle(rng)
        if tri.vertices is None:
            tri = Triangle.from_sides(*tri.sides)
        mu = sc_exterior.exponents_from_triangle(tri)
        inv_worst = max(inv_worst, abs(sum(mu) - 2), abs(residue(solve_prevertices(mu), mu)))
    # realness of isosceles centers
    im_worst = max(abs(laurent_summary(make_isosceles_map(t)).center.imag)
                   for t in (0.4, 1.2, 2.2, 2.9))
    # extremal comparison
    ratios_area = [capacity.extremal_comparison(_random_triangle(rng), "fixed-area")
                   for _ in range(200)]
    ratios_per = [capacity.extremal_comparison(_random_triangle(rng), "fixed-perimeter")
                  for _ in range(200)]
    ok = (f1_worst <= 1e-10 and inv_worst <= 1e-10 and im_worst <= 1e-9
          and min(ratios_area) >= 1 - 1e-12 and max(ratios_per) <= 1 + 1e-12)
    assert report("C12 property suites", ok,
                  f"F1 {f1_worst:.2e}, constraints {inv_worst:.2e}, Im center {im_worst:.2e}, "
                  f"min area ratio {min(ratios_area):.6f}, max perimeter ratio {max(ratios_per):.6f}")


def test_c13_figure_one_centroid(report, tmp_path):
    out = tmp_path / "fig1.csv"
    code = cli.main(["map-grid", "--unit-legs-right", "--circles", "10", "--out", str(out)])
    with open(out, newline="") as fh:
        rows = [r for r in csv.DictReader(line for line in fh if not line.startswith("#"))]
    inner = [complex(float(r["re"]), float(r["im"])) for r in rows
             if r["object_type"] == "circle" and r["object_index"] == "0"]
    c = np.mean(inner)
    d = max(abs(c.real - 0.356), abs(c.imag - 0.356))
    assert report("C13 Figure 1 innermost-circle centroid", code == 0 and d <= 1e-3,
                  f"centroid {c:.6f}, max component diff {d:.2e} (tol 1e-3)")


@pytest.mark.parametrize("name,verts", [("30-60-90", V_30_60_90), ("6-9-13", V_6_9_13)])
def test_c14_open_centers_consistency(report, name, verts):
    tri = Triangle.from_vertices(verts)
    spec = make_general_map(tri)
    a = laurent_summary(spec, r=0.4)
    b = laurent_summary(spec, r=0.7)
    dr = max(abs(a.kappa - b.kappa), abs(a.center - b.center))
    dv = max(abs(g - v) for g, v in zip(vertex_images(spec), tri.vertices))
    assert report(f"C14 {name} center self-consistency", dr <= 1e-8 and dv <= 1e-6,
                  f"center {a.center:.12f}, radius independence {dr:.2e} (1e-8), "
                  f"vertex residual {dv:.2e} (1e-6)")

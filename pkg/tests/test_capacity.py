import itertools
import math

import numpy as np
import pytest

from capmap import capacity as cap
from capmap.errors import DegenerateTriangleError, DomainError
from capmap.geometry import Triangle

SQ2 = math.sqrt(2.0)


def test_geometry():
    g = cap.triangle_geometry(Triangle((1.0, 1.0, SQ2)))
    np.testing.assert_allclose(g.angles, (math.pi / 4, math.pi / 4, math.pi / 2), atol=1e-15)
    assert g.area == pytest.approx(0.5) and g.circumradius == pytest.approx(SQ2 / 2)
    g = cap.triangle_geometry(Triangle((1.0, 1.0, 1.0)))
    assert g.area == pytest.approx(math.sqrt(3) / 4) and g.circumradius == pytest.approx(1 / math.sqrt(3))
    t = Triangle((6.0, 9.0, 13.0))
    assert math.cos(t.angles()[2]) == pytest.approx(-13 / 27, rel=1e-14)
    g = cap.triangle_geometry(t)
    assert sum(g.angles) == pytest.approx(math.pi, abs=1e-12)
    assert 6 * 9 * 13 == pytest.approx(4 * g.area * g.circumradius, rel=1e-10)


def test_degenerate():
    with pytest.raises(DegenerateTriangleError):
        cap.haegi_capacity(Triangle((1.0, 1.0, 3.0)))


def test_haegi_q():
    assert cap.haegi_q(0.5) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert all(cap.haegi_q(x) > 0 for x in np.linspace(0.01, 0.99, 50))
    assert cap.haegi_q(1e-6) < 1e-5
    for bad in (0.0, 1.0):
        with pytest.raises(DomainError):
            cap.haegi_q(bad)


def test_haegi_invariances():
    tri = Triangle((6.0, 9.0, 13.0))
    k = cap.haegi_capacity(tri).kappa
    for perm in itertools.permutations(tri.sides):
        assert cap.haegi_capacity(Triangle(perm)).kappa == pytest.approx(k, rel=1e-14)
    for s in (0.5, 2.0, 10.0):
        assert cap.haegi_capacity(tri.scaled(s)).kappa == pytest.approx(s * k, rel=1e-12)


def test_isosceles_specialization():
    for theta in np.linspace(0.1, 3.0, 20):
        iso = cap.isosceles_capacity(theta).kappa
        h = cap.haegi_capacity(Triangle((1.0, 1.0, 2 * math.sin(theta / 2)))).kappa
        assert iso == pytest.approx(h, rel=1e-12)
    assert cap.isosceles_capacity(math.pi / 2).kappa == pytest.approx(0.4756344438799819, rel=1e-14)
    assert cap.isosceles_capacity(math.pi / 3).kappa == pytest.approx(
        cap.haegi_capacity(Triangle((1.0, 1.0, 1.0))).kappa, rel=1e-13)
    with pytest.raises(DomainError):
        cap.isosceles_capacity(math.pi)


def test_maximizer():
    theta, kappa = cap.maximize_isosceles_capacity()
    assert abs(theta - 2.5360873621) < 1e-8
    assert kappa >= cap.isosceles_capacity(theta - 0.01).kappa
    assert kappa >= cap.isosceles_capacity(theta + 0.01).kappa
    assert kappa == pytest.approx(0.5167333652703234, rel=1e-12)  # regression


def test_extremal_comparison():
    eq = Triangle((2.0, 2.0, 2.0))
    for mode in ("fixed-area", "fixed-perimeter"):
        assert cap.extremal_comparison(eq, mode) == pytest.approx(1.0, rel=1e-14)
    assert cap.extremal_comparison(Triangle((6.0, 9.0, 13.0)), "fixed-area") > 1
    assert cap.extremal_comparison(Triangle((6.0, 9.0, 13.0)), "fixed-perimeter") < 1
    with pytest.raises(DomainError):
        cap.extremal_comparison(eq, "fixed-volume")


def test_transfinite_small_n():
    tri = Triangle((1.0, 1.0, SQ2))
    assert cap.transfinite_diameter_estimate(tri, 2) == pytest.approx(SQ2, rel=1e-9)
    assert cap.transfinite_diameter_estimate(tri, 3) == pytest.approx(SQ2 ** (1 / 3), rel=1e-7)
    with pytest.raises(DomainError):
        cap.transfinite_diameter_estimate(tri, 1)


@pytest.mark.slow
def test_transfinite_trend():
    tri = Triangle((1.0, 1.0, SQ2))
    kappa = cap.haegi_capacity(tri).kappa
    est = [cap.transfinite_diameter_estimate(tri, n) for n in range(2, 13)]
    assert all(b <= a + 1e-6 for a, b in zip(est, est[1:]))
    # the n-point diameters decrease to the capacity from above
    assert min(est) >= kappa

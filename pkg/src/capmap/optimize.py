"""Scalar minimization helpers: golden-section search and derivative polish."""

import math

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, lo, hi, tol):
    """Minimize a unimodal ``f`` on [lo, hi] until the bracket is shorter than ``tol``.

    Returns the final bracket ``(lo, hi)``.
    """
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
    return lo, hi


def central_difference(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def bisect_derivative(f, lo, hi, tol, h):
    """Locate the zero of the centered-difference derivative of ``f`` in [lo, hi]."""
    d_lo = central_difference(f, lo, h)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        d_mid = central_difference(f, mid, h)
        if d_mid == 0.0:
            return mid
        if (d_mid > 0) == (d_lo > 0):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def newton_on_derivative(f, x, h, steps):
    """Newton iterations on f'(x) = 0 with centered differences of step ``h``."""
    for _ in range(steps):
        fp, f0, fm = f(x + h), f(x), f(x - h)
        d1 = (fp - fm) / (2.0 * h)
        d2 = (fp - 2.0 * f0 + fm) / (h * h)
        if d2 == 0.0:
            break
        x -= d1 / d2
    return x

"""Quadrature rules on the unit interval.

``tanh_sinh`` is a level-doubling double-exponential rule that hands the
integrand both the node ``t`` and its complement ``1 - t`` computed without
cancellation, so factors like ``(1 - t)**p`` stay accurate next to the
endpoint.  ``gauss_legendre`` caches fixed rules for smooth pieces.
"""

from functools import lru_cache

import numpy as np

from capmap.errors import QuadratureError

_HALF_PI = 0.5 * np.pi


@lru_cache(maxsize=None)
def _de_nodes(level, tau_max):
    """Nodes new at ``level`` (odd multiples of h), or all nodes for level 0."""
    h = 2.0 ** (-level)
    if level == 0:
        tau = np.arange(-np.floor(tau_max), np.floor(tau_max) + 1.0)
    else:
        k = np.arange(1, int(np.ceil(tau_max / h)) + 1, 2)
        pos = k * h
        pos = pos[pos <= tau_max]
        tau = np.concatenate([-pos[::-1], pos])
    u = _HALF_PI * np.sinh(tau)
    e = np.exp(-2.0 * np.abs(u))
    small = e / (1.0 + e)  # distance of the node to its nearest endpoint
    large = 1.0 / (1.0 + e)
    t = np.where(u >= 0, large, small)
    tc = np.where(u >= 0, small, large)
    w = np.pi * np.cosh(tau) * t * tc
    keep = w > 1e-300
    return t[keep], tc[keep], w[keep]


def tanh_sinh(f, abs_tol=1e-13, rel_tol=1e-13, max_levels=10, tau_max=4.5,
              min_levels=3):
    """Integrate ``f(t, 1 - t)`` over [0, 1].

    Returns ``(value, error_estimate)``.  The estimate is the difference of
    the last two levels, which overstates the true error once the rule is
    in its quadratically convergent regime.

    Raises
    ------
    QuadratureError
        If ``max_levels`` halvings do not reach the tolerance.
    """
    t, tc, w = _de_nodes(0, tau_max)
    total = np.sum(w * f(t, tc))
    estimate = total
    err = np.inf
    for level in range(1, max_levels + 1):
        t, tc, w = _de_nodes(level, tau_max)
        total = total + np.sum(w * f(t, tc))
        new = total * 2.0 ** (-level)
        err = abs(new - estimate)
        estimate = new
        if level >= min_levels and err <= max(abs_tol, rel_tol * abs(new)):
            return estimate, err
    raise QuadratureError(
        f"tanh-sinh did not converge in {max_levels} levels (last change {err:.3e})")


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w

"""Real gamma function and the Appell F1 function.

F1 is evaluated either by its double hypergeometric series (inside the
bidisk) or by its Euler integral

    F1(a, b, b', c; x, y) = Gamma(c) / (Gamma(a) Gamma(c - a))
        * int_0^1 s^(a-1) (1-s)^(c-a-1) (1-sx)^(-b) (1-sy)^(-b') ds,

which continues it to the cut plane C minus [1, inf) in each variable.
"""

from dataclasses import dataclass
import math

import numpy as np

from capmap import kernels
from capmap.errors import (BranchCutError, ConvergenceError, DomainError,
                           PoleError)
from capmap.quadrature import tanh_sinh

# Godfrey's coefficients for g = 607/128, n = 15.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_GAMMA_MAX = 171.6243769563027

SERIES_RADIUS = 0.7


@dataclass(frozen=True)
class EvalConfig:
    abs_tol: float = 1e-14
    rel_tol: float = 1e-14
    max_terms: int = 400_000
    max_refinements: int = 10

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_terms < 1 or self.max_refinements < 1:
            raise DomainError("limits must be at least 1")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class AppellArgs:
    """Parameter tuple (a, b, b', c; x, y) of one F1 evaluation."""

    a: float
    b: float
    bprime: float
    c: float
    x: complex
    y: complex

    def __post_init__(self):
        for name in ("a", "b", "bprime", "c"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"parameter {name} must be finite")
        if self.c <= 0 and self.c == math.floor(self.c):
            raise PoleError("c must not be a non-positive integer")
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        if not all(map(math.isfinite, (self.x.real, self.x.imag,
                                       self.y.real, self.y.imag))):
            raise DomainError("arguments must be finite")

    def swapped(self):
        """The same value with (b, x) and (b', y) exchanged."""
        return AppellArgs(self.a, self.bprime, self.b, self.c, self.y, self.x)


@dataclass(frozen=True)
class F1Result:
    value: complex
    error: float
    method: str


def gamma_real(x):
    """Gamma function of a real argument.

    Lanczos approximation for x >= 1/2, reflection below.  Relative error
    is a few ulp on (0, 170].

    Raises
    ------
    PoleError
        At non-positive integers.
    OverflowError
        Above about 171.62, where the result exceeds the double range.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("gamma_real needs a finite argument")
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x > _GAMMA_MAX:
        raise OverflowError(f"gamma({x}) overflows")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_real(1.0 - x))
    if x == math.floor(x) and x <= 23:
        return float(math.prod(range(1, int(x))))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    # split the power so t**(x+1/2) never overflows before exp(-t) is applied
    p = t ** (0.5 * (x + 0.5))
    return _SQRT_2PI * p * (p * math.exp(-t)) * acc


def _euler_prefactor(a, c):
    return gamma_real(c) / (gamma_real(a) * gamma_real(c - a))


def appell_f1_series(args, cfg=DEFAULT_CONFIG):
    """Double-series evaluation, valid for |x| < 1 and |y| < 1.

    Shells max(m, n) = K are added until a geometric tail bound drops
    below tolerance.

    Raises
    ------
    DomainError
        If either argument is outside the open unit disk.
    ConvergenceError
        If ``cfg.max_terms`` terms do not reach the tolerance.
    """
    if abs(args.x) >= 1.0 or abs(args.y) >= 1.0:
        raise DomainError("double series needs |x| < 1 and |y| < 1")
    value, tail, n_terms, ok = kernels.f1_double_series(
        float(args.a), float(args.b), float(args.bprime), float(args.c),
        args.x, args.y, cfg.abs_tol, cfg.rel_tol, cfg.max_terms)
    if not ok:
        raise ConvergenceError(f"F1 series not converged after {n_terms} terms")
    return F1Result(complex(value), float(tail), "series")


def _check_cut(z, p, name):
    if p != 0 and z.imag == 0.0 and z.real >= 1.0:
        raise BranchCutError(
            f"(1 - s*{name})^(-p) crosses its branch cut for {name} = {z}")


def _near_singular_points(z):
    """Points of (0, 1) where |1 - s z| is smallest, if close to zero."""
    if z == 0:
        return []
    s = (1.0 / z).real
    if 0.0 < s < 1.0 and abs(1.0 - s * z) < 0.25:
        return [s]
    return []


def appell_f1_integral(args, cfg=DEFAULT_CONFIG):
    """Euler-integral evaluation, valid for c > a > 0 off the cuts.

    The interval is split at 1/2 and at near-singular interior points; the
    end pieces use s = p * v**(1/a) and 1 - s = q * v**(1/(c-a)) so that the
    algebraic endpoint factors become constants before tanh-sinh is applied.

    Raises
    ------
    DomainError
        If c > a > 0 fails.
    BranchCutError
        If x or y lies on [1, inf).
    QuadratureError
        If refinement stalls.
    """
    a, b, bp, c, x, y = args.a, args.b, args.bprime, args.c, args.x, args.y
    if not (c > a > 0):
        raise DomainError("Euler integral needs c > a > 0")
    _check_cut(x, b, "x")
    _check_cut(y, bp, "y")
    e = c - a

    def smooth(s, sc):
        return (1.0 - s * x) ** (-b) * (1.0 - s * y) ** (-bp)

    cuts = sorted({0.5, *_near_singular_points(x), *_near_singular_points(y)})
    left, right = cuts[0], cuts[-1]
    total = 0.0j
    err = 0.0
    tol = dict(abs_tol=cfg.abs_tol, rel_tol=cfg.rel_tol,
               max_levels=cfg.max_refinements)

    def left_piece(v, vc):
        s = left * v ** (1.0 / a)
        return (1.0 - s) ** (e - 1.0) * smooth(s, 1.0 - s)

    val, er = tanh_sinh(left_piece, **tol)
    total += val * left ** a / a
    err += er * left ** a / a

    def right_piece(v, vc):
        sc = (1.0 - right) * v ** (1.0 / e)
        s = 1.0 - sc
        return s ** (a - 1.0) * smooth(s, sc)

    val, er = tanh_sinh(right_piece, **tol)
    total += val * (1.0 - right) ** e / e
    err += er * (1.0 - right) ** e / e

    for lo, hi in zip(cuts[:-1], cuts[1:]):
        width = hi - lo

        def mid_piece(t, tc, lo=lo, hi=hi, width=width):
            s = np.where(t < 0.5, lo + width * t, hi - width * tc)
            sc = 1.0 - s
            return s ** (a - 1.0) * sc ** (e - 1.0) * smooth(s, sc)

        val, er = tanh_sinh(mid_piece, **tol)
        total += val * width
        err += er * width

    pref = _euler_prefactor(a, c)
    return F1Result(complex(total * pref), float(err * abs(pref)), "integral")


def appell_f1(args, cfg=DEFAULT_CONFIG):
    """Evaluate F1, by series when |x|, |y| <= 0.7 and by the integral otherwise.

    Raises
    ------
    DomainError
        If neither evaluator accepts the arguments.
    """
    if max(abs(args.x), abs(args.y)) <= SERIES_RADIUS:
        return appell_f1_series(args, cfg)
    if not (args.c > args.a > 0):
        raise DomainError(
            "F1 arguments outside the series disk need c > a > 0 for the integral form")
    return appell_f1_integral(args, cfg)


def hyp2f1_series(a, b, c, x, tol=1e-16, max_terms=100_000):
    """Gauss 2F1(a, b; c; x) by its power series, |x| < 1."""
    x = complex(x)
    if abs(x) >= 1:
        raise DomainError("2F1 series needs |x| < 1")
    term = 1.0 + 0.0j
    total = term
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        if abs(term) <= tol * max(1.0, abs(total)) and n > 4:
            return total
    raise ConvergenceError("2F1 series did not converge")

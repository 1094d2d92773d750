"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so the CAPMAP_PURE_PYTHON switch does
not matter here.  Results are checked to agree before timings are printed.
"""

import argparse
import math
import timeit

import numpy as np

from capmap import _fallback

try:
    from capmap import _ckernels
except ImportError:
    _ckernels = None

SERIES_CASES = {
    "F1 series |x|,|y|=0.3": (0.5, 0.25, 0.25, 1.5, 0.3 + 0j, 0.3j),
    "F1 series |x|,|y|=0.7": (0.5, 0.25, 0.25, 1.5, 0.5 - 0.49j, 0.5 + 0.49j),
}
TRIANGLE = (0.0, 0.0, 1.0, 0.0, 0.0, 1.0)


def _series(mod, args):
    return lambda: mod.f1_double_series(*args, 1e-15, 1e-15, 400_000)


def _fekete(mod, n, seed=0):
    rng = np.random.default_rng(seed)
    u = rng.random((n, 2))
    u[u.sum(axis=1) > 1] = 1 - u[u.sum(axis=1) > 1]

    def run():
        px, py = u[:, 0].copy(), u[:, 1].copy()
        return mod.fekete_ascent(px, py, TRIANGLE, 0.25, 1e-9)
    return run


def _best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the fallback is available")
        return
    cases = [(name, _series(_fallback, a), _series(_ckernels, a)) for name, a in SERIES_CASES.items()]
    cases += [(f"Fekete ascent n={n}", _fekete(_fallback, n), _fekete(_ckernels, n)) for n in (6, 12)]
    print(f"{'kernel':<26}{'python [ms]':>13}{'cython [ms]':>13}{'speedup':>9}")
    for name, py, cy in cases:
        rp, rc = py(), cy()
        vp, vc = (rp[0], rc[0]) if isinstance(rp, tuple) else (rp, rc)
        if not math.isclose(abs(vp - vc), 0.0, abs_tol=1e-12 * max(1.0, abs(vp))):
            raise SystemExit(f"{name}: backends disagree ({vp} vs {vc})")
        tp, tc = _best(py, args.repeat), _best(cy, args.repeat)
        print(f"{name:<26}{1e3 * tp:>13.3f}{1e3 * tc:>13.3f}{tp / tc:>9.1f}")


if __name__ == "__main__":
    main()

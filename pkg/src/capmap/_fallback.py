"""Pure-Python versions of the hot kernels.

These mirror ``_ckernels.pyx`` line for line and are used when the compiled
extension is unavailable or ``CAPMAP_PURE_PYTHON`` is set.
"""

import math


def f1_double_series(a, b, bp, c, x, y, abs_tol, rel_tol, max_terms):
    """Sum the Appell F1 double series in square shells max(m, n) = K.

    Returns ``(value, tail_estimate, n_terms, converged)``.
    """
    x = complex(x)
    y = complex(y)
    r = max(abs(x), abs(y))
    total = 1.0 + 0.0j
    col = [1.0 + 0.0j]  # col[m] = t(m, K-1) for m < K
    row_head = 1.0 + 0.0j  # t(K-1, 0)
    prev_shell = 1.0
    n_terms = 1
    k = 0
    while True:
        k += 1
        n_terms += 2 * k + 1
        if n_terms > max_terms:
            return total, math.inf, n_terms - (2 * k + 1), False
        shell = 0.0
        acc = 0.0j
        # column n = k for rows m < k
        for m in range(k):
            t = col[m] * ((a + m + k - 1) * (bp + k - 1) / ((c + m + k - 1) * k)) * y
            col[m] = t
            acc += t
            shell += abs(t)
        # row m = k for n = 0..k
        t = row_head * ((a + k - 1) * (b + k - 1) / ((c + k - 1) * k)) * x
        row_head = t
        acc += t
        shell += abs(t)
        for n in range(1, k + 1):
            t = t * ((a + k + n - 1) * (bp + n - 1) / ((c + k + n - 1) * n)) * y
            acc += t
            shell += abs(t)
        col.append(t)
        total += acc
        if shell == 0.0 and prev_shell == 0.0:
            return total, 0.0, n_terms, True
        rho = r
        if prev_shell > 0.0:
            rho = max(rho, shell / prev_shell)
        prev_shell = shell
        if k >= 2 and rho < 1.0:
            tail = shell * rho / (1.0 - rho)
            if tail <= max(abs_tol, rel_tol * abs(total)):
                return total, tail, n_terms, True


def _project(x, y, v):
    """Euclidean projection of (x, y) onto the closed triangle v (6 floats, ccw)."""
    x0, y0, x1, y1, x2, y2 = v
    d0 = (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0)
    d1 = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
    d2 = (x0 - x2) * (y - y2) - (y0 - y2) * (x - x2)
    if d0 >= 0.0 and d1 >= 0.0 and d2 >= 0.0:
        return x, y
    best = None
    best_d = math.inf
    for ax, ay, bx, by in ((x0, y0, x1, y1), (x1, y1, x2, y2), (x2, y2, x0, y0)):
        ex = bx - ax
        ey = by - ay
        s = ((x - ax) * ex + (y - ay) * ey) / (ex * ex + ey * ey)
        s = min(1.0, max(0.0, s))
        px = ax + s * ex
        py = ay + s * ey
        dd = (px - x) ** 2 + (py - y) ** 2
        if dd < best_d:
            best_d = dd
            best = (px, py)
    return best


def _point_energy(px, py, i, x, y):
    e = 0.0
    for j in range(len(px)):
        if j != i:
            d = math.hypot(x - px[j], y - py[j])
            if d == 0.0:
                return -math.inf
            e += math.log(d)
    return e


_DIRECTIONS = ((1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0),
               (0.7071067811865476, 0.7071067811865476),
               (-0.7071067811865476, 0.7071067811865476),
               (0.7071067811865476, -0.7071067811865476),
               (-0.7071067811865476, -0.7071067811865476))


def fekete_ascent(px, py, verts, step, min_step):
    """Projected coordinate ascent on sum_{j<k} log|z_j - z_k|.

    ``px``/``py`` are modified in place. Returns the final log-energy.
    """
    n = len(px)
    while step >= min_step:
        improved = True
        while improved:
            improved = False
            for i in range(n):
                cur = _point_energy(px, py, i, px[i], py[i])
                best = cur
                bx = px[i]
                by = py[i]
                for dx, dy in _DIRECTIONS:
                    qx, qy = _project(px[i] + step * dx, py[i] + step * dy, verts)
                    e = _point_energy(px, py, i, qx, qy)
                    if e > best + 1e-15:
                        best = e
                        bx = qx
                        by = qy
                if best > cur + 1e-15:
                    px[i] = bx
                    py[i] = by
                    improved = True
        step *= 0.5
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            total += math.log(math.hypot(px[i] - px[j], py[i] - py[j]))
    return total

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see ``_fallback.py`` for the reference)."""

from libc.math cimport fabs, hypot, log, INFINITY
from libc.stdlib cimport malloc, free


def f1_double_series(double a, double b, double bp, double c, x, y,
                     double abs_tol, double rel_tol, long max_terms):
    cdef double complex cx = x
    cdef double complex cy = y
    cdef double r = max(abs(cx), abs(cy))
    cdef double complex total = 1.0
    cdef double complex acc, t, row_head = 1.0
    cdef double shell, prev_shell = 1.0, rho, tail, lim
    cdef long n_terms = 1, k = 0, m, n, cap
    cdef double complex *col
    cap = 64
    col = <double complex *> malloc(cap * sizeof(double complex))
    if col == NULL:
        raise MemoryError()
    col[0] = 1.0
    try:
        while True:
            k += 1
            n_terms += 2 * k + 1
            if n_terms > max_terms:
                return complex(total), float("inf"), n_terms - (2 * k + 1), False
            if k + 1 > cap:
                cap *= 2
                col = _grow(col, cap)
            shell = 0.0
            acc = 0.0
            for m in range(k):
                t = col[m] * ((a + m + k - 1) * (bp + k - 1) / ((c + m + k - 1) * k)) * cy
                col[m] = t
                acc += t
                shell += abs(t)
            t = row_head * ((a + k - 1) * (b + k - 1) / ((c + k - 1) * k)) * cx
            row_head = t
            acc += t
            shell += abs(t)
            for n in range(1, k + 1):
                t = t * ((a + k + n - 1) * (bp + n - 1) / ((c + k + n - 1) * n)) * cy
                acc += t
                shell += abs(t)
            col[k] = t
            total += acc
            if shell == 0.0 and prev_shell == 0.0:
                return complex(total), 0.0, n_terms, True
            rho = r
            if prev_shell > 0.0 and shell / prev_shell > rho:
                rho = shell / prev_shell
            prev_shell = shell
            if k >= 2 and rho < 1.0:
                tail = shell * rho / (1.0 - rho)
                lim = rel_tol * abs(total)
                if abs_tol > lim:
                    lim = abs_tol
                if tail <= lim:
                    return complex(total), tail, n_terms, True
    finally:
        free(col)


cdef double complex *_grow(double complex *p, long cap) except NULL:
    cdef double complex *q = <double complex *> malloc(cap * sizeof(double complex))
    cdef long i
    if q == NULL:
        free(p)
        raise MemoryError()
    for i in range(cap // 2):
        q[i] = p[i]
    free(p)
    return q


cdef inline void _project(double x, double y, double *v, double *out) noexcept:
    cdef double d0, d1, d2, ax, ay, bx, by, ex, ey, s, px, py, dd, best_d
    cdef int e
    d0 = (v[2] - v[0]) * (y - v[1]) - (v[3] - v[1]) * (x - v[0])
    d1 = (v[4] - v[2]) * (y - v[3]) - (v[5] - v[3]) * (x - v[2])
    d2 = (v[0] - v[4]) * (y - v[5]) - (v[1] - v[5]) * (x - v[4])
    if d0 >= 0.0 and d1 >= 0.0 and d2 >= 0.0:
        out[0] = x
        out[1] = y
        return
    best_d = INFINITY
    for e in range(3):
        ax = v[2 * e]
        ay = v[2 * e + 1]
        bx = v[(2 * e + 2) % 6]
        by = v[(2 * e + 3) % 6]
        ex = bx - ax
        ey = by - ay
        s = ((x - ax) * ex + (y - ay) * ey) / (ex * ex + ey * ey)
        if s < 0.0:
            s = 0.0
        elif s > 1.0:
            s = 1.0
        px = ax + s * ex
        py = ay + s * ey
        dd = (px - x) * (px - x) + (py - y) * (py - y)
        if dd < best_d:
            best_d = dd
            out[0] = px
            out[1] = py


cdef inline double _point_energy(double *px, double *py, int n, int i,
                                 double x, double y) noexcept:
    cdef double e = 0.0, d
    cdef int j
    for j in range(n):
        if j != i:
            d = hypot(x - px[j], y - py[j])
            if d == 0.0:
                return -INFINITY
            e += log(d)
    return e


cdef double[16] _DIRS = [1.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, -1.0,
                         0.7071067811865476, 0.7071067811865476,
                         -0.7071067811865476, 0.7071067811865476,
                         0.7071067811865476, -0.7071067811865476,
                         -0.7071067811865476, -0.7071067811865476]


def fekete_ascent(double[::1] px, double[::1] py, verts, double step, double min_step):
    cdef int n = px.shape[0], i, j, d
    cdef double[6] v
    cdef double[2] q
    cdef double cur, best, bx, by, e, total
    cdef bint improved
    for i in range(6):
        v[i] = verts[i]
    while step >= min_step:
        improved = True
        while improved:
            improved = False
            for i in range(n):
                cur = _point_energy(&px[0], &py[0], n, i, px[i], py[i])
                best = cur
                bx = px[i]
                by = py[i]
                for d in range(8):
                    _project(px[i] + step * _DIRS[2 * d], py[i] + step * _DIRS[2 * d + 1], v, q)
                    e = _point_energy(&px[0], &py[0], n, i, q[0], q[1])
                    if e > best + 1e-15:
                        best = e
                        bx = q[0]
                        by = q[1]
                if best > cur + 1e-15:
                    px[i] = bx
                    py[i] = by
                    improved = True
        step *= 0.5
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            total += log(hypot(px[i] - px[j], py[i] - py[j]))
    return total

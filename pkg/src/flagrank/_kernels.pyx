# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled codeword scan over table-driven GF(q), q <= 256.

Same contract as ``flagrank._scanpy.scan_unit``; the odometer walks the
counter range and updates the codeword with precomputed digit steps so each
codeword costs one table-add pass plus the nested rank computations.
"""

import numpy as np

cdef enum:
    MAXN = 64
    NO_WEIGHT = 2147483647


cdef int _block_rank(const int* cw, int n, int i, int* buf,
                     const int[:, ::1] add, const int[:, ::1] mul,
                     const int[::1] neg, const int[::1] inv) noexcept nogil:
    # top-right i x (n - i + 1) block of the row-major n x n codeword
    cdef int r = i, c = n - i + 1
    cdef int a, b, col, p, rr, cc, rk = 0, f, fac, tmp, pv
    for a in range(r):
        for b in range(c):
            buf[a * MAXN + b] = cw[a * n + (i - 1) + b]
    for col in range(c):
        if rk == r:
            break
        p = -1
        for rr in range(rk, r):
            if buf[rr * MAXN + col] != 0:
                p = rr
                break
        if p < 0:
            continue
        if p != rk:
            for cc in range(col, c):
                tmp = buf[p * MAXN + cc]
                buf[p * MAXN + cc] = buf[rk * MAXN + cc]
                buf[rk * MAXN + cc] = tmp
        pv = inv[buf[rk * MAXN + col]]
        for rr in range(rk + 1, r):
            f = buf[rr * MAXN + col]
            if f != 0:
                fac = neg[mul[f, pv]]
                for cc in range(col, c):
                    buf[rr * MAXN + cc] = add[buf[rr * MAXN + cc], mul[fac, buf[rk * MAXN + cc]]]
        rk += 1
    return rk


def scan_unit(const int[:, ::1] add, const int[:, ::1] mul,
              const int[::1] neg, const int[::1] inv,
              const int[:, :, ::1] step, start,
              long long lo, long long hi, int q, int n,
              const int[::1] levels, int bound):
    """Return ``(best_weight, best_counter, examined)`` over counters ``[lo, hi)``.

    ``start`` is the codeword at counter ``lo``; ``step[j, d]`` is the
    increment applied when digit ``j`` moves from code ``d`` to ``(d+1) % q``.
    """
    if n > MAXN:
        raise ValueError("matrix size exceeds compiled kernel limit")
    cdef int N = n * n
    cdef int t_low = step.shape[0]
    cdef int[::1] cw = np.ascontiguousarray(start, dtype=np.int32).copy()
    cdef int[::1] digits = np.zeros(max(t_low, 1), dtype=np.int32)
    cdef int[::1] buf = np.zeros(MAXN * MAXN, dtype=np.int32)
    cdef int nlev = levels.shape[0]
    cdef long long x = lo, rem = lo, examined = 0, best_x = -1
    cdef int best = NO_WEIGHT, acc, li, j, d, e
    for j in range(t_low):
        digits[j] = <int>(rem % q)
        rem //= q
    with nogil:
        while x < hi:
            acc = 0
            for li in range(nlev):
                acc += _block_rank(&cw[0], n, levels[li], &buf[0], add, mul, neg, inv)
                if acc >= best:
                    break
            examined += 1
            if acc < best:
                best = acc
                best_x = x
                if bound > 0 and best < bound:
                    break
            x += 1
            if x >= hi:
                break
            j = 0
            while True:
                d = digits[j]
                for e in range(N):
                    cw[e] = add[cw[e], step[j, d, e]]
                if d == q - 1:
                    digits[j] = 0
                    j += 1
                else:
                    digits[j] = d + 1
                    break
    return best, best_x, examined

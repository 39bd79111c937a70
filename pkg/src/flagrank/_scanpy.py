"""Pure-numpy codeword scan; the reference path and fallback for ``_kernels``.

A scan unit enumerates the codewords ``lead + sum_j c_j * B_j`` for the
base-q counters ``x = sum_j c_j q^j`` in ``[lo, hi)`` and reports the
smallest nested-rank weight seen together with the first counter attaining
it.  With ``bound > 0`` the unit stops at the first codeword of weight
below ``bound``.
"""

from __future__ import annotations

import numpy as np

from flagrank.gf import FieldSpec
from flagrank.linalg import batch_rank

BATCH = 4096
NO_WEIGHT = np.iinfo(np.int32).max


def nested_weights(cw: np.ndarray, F: FieldSpec, n: int, levels: np.ndarray) -> np.ndarray:
    """Sum over ``levels`` of the ranks of the top-right blocks of each ``n x n`` row of ``cw``."""
    mats = cw.reshape(-1, n, n)
    w = np.zeros(mats.shape[0], dtype=np.int64)
    for i in levels:
        w += batch_rank(mats[:, :i, i - 1:], F)
    return w


def codewords(F: FieldSpec, mul_b: np.ndarray, lead: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Codewords for counters ``xs``; ``mul_b[j, c]`` holds ``c * B_j``."""
    q = F.order
    cw = np.broadcast_to(lead, (xs.size, lead.size)).copy()
    rem = xs.copy()
    for j in range(mul_b.shape[0]):
        d = rem % q
        rem //= q
        cw = F.add(cw, mul_b[j][d])
    return cw


def scan_unit(
    F: FieldSpec,
    mul_b: np.ndarray,
    lead: np.ndarray,
    lo: int,
    hi: int,
    n: int,
    levels: np.ndarray,
    bound: int,
) -> tuple[int, int, int]:
    best, best_x, examined = NO_WEIGHT, -1, 0
    x0 = lo
    while x0 < hi:
        x1 = min(hi, x0 + BATCH)
        xs = np.arange(x0, x1, dtype=np.int64)
        w = nested_weights(codewords(F, mul_b, lead, xs), F, n, levels)
        if bound > 0:
            below = np.flatnonzero(w < bound)
            if below.size:
                k = int(below[0])
                return int(w[k]), int(xs[k]), examined + k + 1
        k = int(np.argmin(w))
        if w[k] < best:
            best, best_x = int(w[k]), int(xs[k])
        examined += xs.size
        x0 = x1
    return best, best_x, examined

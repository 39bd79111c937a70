"""Minimum nested-rank weight over a linear span by exhaustive enumeration.

Only one codeword per projective point is visited: the coefficient vector's
most significant nonzero digit is fixed to 1, which is enough because every
weight used here is invariant under nonzero scaling.  The enumeration is
split into ordered work units that run on a thread pool; the compiled kernel
releases the GIL, so units overlap on multi-core machines.

The backend is chosen at import: ``flagrank._kernels`` when it was built,
otherwise the numpy path in :mod:`flagrank._scanpy`.  Setting
``FLAGRANK_BACKEND=python`` forces the numpy path.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice
from typing import Callable, Iterator, Sequence

import numpy as np

from flagrank import _scanpy
from flagrank.errors import BudgetExceeded, InvalidInput
from flagrank.gf import FieldSpec

try:
    from flagrank import _kernels
except ImportError:  # extension not built
    _kernels = None

SCAN_BUDGET = 1 << 24
UNIT = 1 << 15
KERNEL_MAX_N = 64

BACKEND = "python" if _kernels is None or os.environ.get("FLAGRANK_BACKEND") == "python" else "compiled"


def available_backends() -> list[str]:
    return ["python"] if _kernels is None else ["compiled", "python"]


def _workers() -> int:
    env = os.environ.get("FLAGRANK_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class ScanResult:
    """``weight`` is ``None`` for the zero space; ``index`` orders the visited codewords."""

    weight: int | None
    index: int
    coefficients: tuple[int, ...]
    examined: int


def scan_size(q: int, t: int) -> int:
    return q**t


def check_budget(q: int, t: int, budget: int = SCAN_BUDGET) -> None:
    if scan_size(q, t) > budget:
        raise BudgetExceeded(f"exhaustive scan of q^t = {q}^{t} codewords exceeds budget {budget}")


def _units(q: int, t: int) -> Iterator[tuple[int, int, int]]:
    for lead in range(t):
        total = q**lead
        for lo in range(0, total, UNIT):
            yield lead, lo, min(total, lo + UNIT)


def _coefficients(q: int, t: int, lead: int, x: int) -> tuple[int, ...]:
    c = [0] * t
    c[lead] = 1
    for j in range(lead):
        c[j] = x % q
        x //= q
    return tuple(c)


def min_weight(
    F: FieldSpec,
    basis: np.ndarray,
    n: int,
    levels: Sequence[int] | None = None,
    bound: int = 0,
    budget: int = SCAN_BUDGET,
    backend: str | None = None,
) -> ScanResult:
    """Least ``sum_{i in levels} rank(M[:i, i-1:])`` over nonzero ``M`` in ``span(basis)``.

    ``basis`` has shape ``(t, n*n)`` with linearly independent rows.  With
    ``bound > 0`` the scan stops at the first codeword (in index order) of
    weight below ``bound``; the returned weight is then that codeword's.
    """
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, n * n)
    t = basis.shape[0]
    q = F.order
    if t == 0:
        return ScanResult(None, -1, (), 0)
    check_budget(q, t, budget)
    lv = np.array(range(1, n + 1) if levels is None else sorted(levels), dtype=np.int32)
    backend = backend or BACKEND
    if backend not in available_backends():
        raise InvalidInput(f"scan backend {backend!r} is not available")
    if backend == "compiled" and (F.tables is None or n > KERNEL_MAX_N):
        backend = "python"

    codes = np.arange(q, dtype=np.int64)
    mul_b = np.stack([F.mul(codes[:, None], basis[j][None, :]) for j in range(t)])

    if backend == "compiled":
        add, mul, neg, inv = F.tables
        nxt = (codes + 1) % q
        step = F.sub(mul_b[:, nxt], mul_b).astype(np.int32)

        def run(unit: tuple[int, int, int]) -> tuple[int, int, int]:
            lead, lo, hi = unit
            start = _scanpy.codewords(F, mul_b[:lead], basis[lead], np.array([lo]))[0]
            return _kernels.scan_unit(
                add, mul, neg, inv, np.ascontiguousarray(step[:lead]).reshape(lead, q, n * n),
                start, lo, hi, q, n, lv, bound,
            )
    else:

        def run(unit: tuple[int, int, int]) -> tuple[int, int, int]:
            lead, lo, hi = unit
            return _scanpy.scan_unit(F, mul_b[:lead], basis[lead], lo, hi, n, lv, bound)

    best = (_scanpy.NO_WEIGHT, -1)
    best_unit: tuple[int, int] | None = None
    examined = 0
    workers = _workers() if q ** (t - 1) > UNIT else 1
    units = _units(q, t)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while True:
            window = list(islice(units, 4 * workers))
            if not window:
                break
            hit = False
            results = pool.map(run, window) if pool else map(run, window)
            for (lead, _, _), (w, x, ex) in zip(window, results):
                examined += ex
                if x >= 0 and (w, q**lead + x) < best:
                    best = (w, q**lead + x)
                    best_unit = (lead, x)
                if bound > 0 and best[0] < bound:
                    hit = True
                    break
            if hit:
                break
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
    assert best_unit is not None
    lead, x = best_unit
    return ScanResult(int(best[0]), best[1], _coefficients(q, t, lead, x), examined)


def iter_projective(
    F: FieldSpec, basis: np.ndarray, batch: int = 8192
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(lead, counters, codewords)`` batches over one codeword per projective point."""
    basis = np.asarray(basis, dtype=np.int64)
    q = F.order
    codes = np.arange(q, dtype=np.int64)
    mul_b = np.stack([F.mul(codes[:, None], row[None, :]) for row in basis]) if len(basis) else None
    for lead in range(basis.shape[0]):
        total = q**lead
        for lo in range(0, total, batch):
            xs = np.arange(lo, min(total, lo + batch), dtype=np.int64)
            yield lead, xs, _scanpy.codewords(F, mul_b[:lead], basis[lead], xs)


def min_weight_generic(
    F: FieldSpec,
    basis: np.ndarray,
    weight: Callable[[np.ndarray], np.ndarray],
    budget: int = SCAN_BUDGET,
) -> ScanResult:
    """Exhaustive minimum of a scale-invariant ``weight`` (vectorized over codeword rows)."""
    basis = np.asarray(basis, dtype=np.int64)
    t = basis.shape[0]
    q = F.order
    if t == 0:
        return ScanResult(None, -1, (), 0)
    check_budget(q, t, budget)
    best: tuple[int, int] | None = None
    best_unit = (0, 0)
    examined = 0
    for lead, xs, cw in iter_projective(F, basis):
        w = weight(cw)
        k = int(np.argmin(w))
        cand = (int(w[k]), q**lead + int(xs[k]))
        if best is None or cand < best:
            best, best_unit = cand, (lead, int(xs[k]))
        examined += xs.size
    assert best is not None
    return ScanResult(best[0], best[1], _coefficients(q, t, *best_unit), examined)

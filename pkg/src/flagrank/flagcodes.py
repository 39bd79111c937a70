"""Flag-rank-metric codes: weights, Singleton-like functions, distance verification, duality.

A code is a linear subspace of the upper triangular ``n x n`` matrices
``U(n, F)``.  The flag-rank weight of ``M`` is ``sum_i rank(M_[i])`` where
``M_[i]`` is the top-right ``i x (n - i + 1)`` block.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from functools import cached_property
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from flagrank import scan
from flagrank.errors import BudgetExceeded, InvalidInput
from flagrank.gf import FieldSpec
from flagrank.linalg import Mat, independent_rows, nullspace_array, rank_array

STRATEGIES = ("full-scan", "band-certified", "optimum-criterion")


# -- Singleton-like functions ----------------------------------------------


def w_max(n: int) -> int:
    """Largest flag-rank weight in ``U(n, F)``: ``k^2`` for ``n = 2k - 1``, ``k(k + 1)`` for ``n = 2k``."""
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    k = (n + 1) // 2
    return k * k if n % 2 else k * (k + 1)


def g(delta: int) -> int:
    """Least codimension of a code with minimum distance ``delta``."""
    if delta < 1:
        raise InvalidInput(f"delta must be >= 1, got {delta}")
    d = delta - 1
    return d + isqrt(d) * ((isqrt(4 * d + 1) - 1) // 2)


def f(n: int, delta: int) -> int:
    """Largest dimension of a code in ``U(n, F)`` with minimum distance ``delta``."""
    return n * (n + 1) // 2 - g(delta)


def singleton_values(n: int, delta: int) -> tuple[int, int, int]:
    """``(w_max(n), g(delta), f(n, delta))``."""
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    wm = w_max(n)
    if not 1 <= delta <= wm:
        raise InvalidInput(f"delta={delta} outside [1, {wm}] for n={n}")
    return wm, g(delta), f(n, delta)


def optimal_delta(n: int, t: int) -> int:
    """Largest ``delta`` the bound allows at dimension ``t``: ``max{delta : f(n, delta) >= t}``."""
    if not 1 <= t <= n * (n + 1) // 2:
        raise InvalidInput(f"dimension {t} outside [1, {n * (n + 1) // 2}]")
    return max(d for d in range(1, w_max(n) + 1) if f(n, d) >= t)


# -- coordinates -------------------------------------------------------------


def ut_positions(n: int) -> list[tuple[int, int]]:
    """0-based ``(i, j)`` with ``i <= j`` in row-major order."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def band_positions(n: int, r: int) -> list[tuple[int, int]]:
    """Support of ``D(r, n)``: upper triangular entries with ``j - i < r``."""
    return [(i, j) for i, j in ut_positions(n) if j - i < r]


def _flat(n: int, pos: Iterable[tuple[int, int]]) -> list[int]:
    return [i * n + j for i, j in pos]


def band_dim(n: int, r: int) -> int:
    return len(band_positions(n, r))


# -- codes -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UTCode:
    """Linear code in ``U(n, F)`` with an independent upper triangular basis."""

    field: FieldSpec
    n: int
    basis: tuple[Mat, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(self.basis))
        if self.n < 1:
            raise InvalidInput(f"n must be positive, got {self.n}")
        for B in self.basis:
            if B.field != self.field:
                raise InvalidInput("basis matrix lives over a different field")
            if B.shape != (self.n, self.n) or not B.is_upper():
                raise InvalidInput(f"basis matrices must be upper triangular {self.n}x{self.n}")
        if self.basis and rank_array(self.vectors, self.field) != len(self.basis):
            raise InvalidInput("basis matrices are linearly dependent")

    @classmethod
    def from_vectors(cls, field: FieldSpec, n: int, vecs: np.ndarray) -> "UTCode":
        """Code spanned by row-major ``n*n`` vectors; an independent subset becomes the basis."""
        vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, n * n)
        keep = independent_rows(vecs, field) if vecs.size else []
        return cls(field, n, tuple(Mat(field, vecs[i].reshape(n, n)) for i in keep))

    @classmethod
    def span(cls, field: FieldSpec, n: int, mats: Sequence[Mat]) -> "UTCode":
        if not mats:
            return cls(field, n, ())
        return cls.from_vectors(field, n, np.stack([M.data.reshape(-1) for M in mats]))

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "UTCode":
        return cls.from_vectors(field, n, _unit_vectors(n, ut_positions(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.n * (self.n + 1) // 2 - self.dim

    @cached_property
    def vectors(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.n * self.n), dtype=np.int64)
        v = np.stack([B.data.reshape(-1) for B in self.basis])
        v.setflags(write=False)
        return v

    @cached_property
    def parity(self) -> np.ndarray:
        """Rows ``h`` over the upper triangular coordinates with ``h . c = 0`` exactly for codewords ``c``."""
        cols = _flat(self.n, ut_positions(self.n))
        ut = self.vectors[:, cols]
        H = nullspace_array(ut, self.field, len(cols)) if self.dim else np.eye(len(cols), dtype=np.int64)
        H.setflags(write=False)
        return H

    def __add__(self, other: "UTCode") -> "UTCode":
        if other.field != self.field or other.n != self.n:
            raise InvalidInput("codes differ in field or size")
        return UTCode.from_vectors(self.field, self.n, np.vstack([self.vectors, other.vectors]))

    def same_space(self, other: "UTCode") -> bool:
        if other.field != self.field or other.n != self.n or other.dim != self.dim:
            return False
        return rank_array(np.vstack([self.vectors, other.vectors]), self.field) == self.dim if self.dim else True

    def contains(self, M: Mat) -> bool:
        if M.shape != (self.n, self.n) or not M.is_upper():
            return False
        v = M.data.reshape(-1)[_flat(self.n, ut_positions(self.n))]
        return not self.field.matmul(self.parity, v[:, None]).any() if self.parity.size else True

    def restrict(self, positions: Sequence[tuple[int, int]]) -> "UTCode":
        """``C`` intersected with the coordinate subspace spanned by ``E_ij`` for ``(i, j)`` in ``positions``."""
        allowed = set(positions)
        ut = ut_positions(self.n)
        idx = [k for k, p in enumerate(ut) if p in allowed]
        if not idx:
            return UTCode(self.field, self.n, ())
        H = self.parity[:, idx]
        if H.shape[0]:
            K = nullspace_array(H, self.field, len(idx))
        else:
            K = np.eye(len(idx), dtype=np.int64)
        out = np.zeros((K.shape[0], self.n * self.n), dtype=np.int64)
        out[:, _flat(self.n, [ut[k] for k in idx])] = K
        return UTCode(self.field, self.n, tuple(Mat(self.field, v.reshape(self.n, self.n)) for v in out))


def _unit_vectors(n: int, pos: Sequence[tuple[int, int]]) -> np.ndarray:
    out = np.zeros((len(pos), n * n), dtype=np.int64)
    for r, (i, j) in enumerate(pos):
        out[r, i * n + j] = 1
    return out


def embedded_full(F: FieldSpec, n: int, ell: int, i: int, j: int) -> UTCode:
    """``phi_{i,j}(U(ell, F))`` inside ``U(n, F)``."""
    if ell < 1:
        return UTCode(F, n, ())
    pos = [(i - 1 + a, j - 1 + b) for a, b in ut_positions(ell)]
    if max(max(p) for p in pos) >= n:
        raise InvalidInput(f"U({ell}) at ({i},{j}) does not fit in {n}x{n}")
    return UTCode.from_vectors(F, n, _unit_vectors(n, pos))


# -- weights -----------------------------------------------------------------


def _require_upper(M: Mat) -> None:
    if not M.is_upper():
        raise InvalidInput("matrix must be square upper triangular")


def flag_rank_weight(M: Mat) -> int:
    _require_upper(M)
    n = M.rows
    return sum(rank_array(M.data[:i, i - 1:], M.field) for i in range(1, n + 1))


def flag_rank_distance(A: Mat, B: Mat) -> int:
    if A.field != B.field or A.shape != B.shape:
        raise InvalidInput("matrices differ in field or shape")
    _require_upper(A)
    _require_upper(B)
    return flag_rank_weight(A - B)


# -- distance verification ---------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Outcome of ``min distance >= delta`` via low-weight subspaces.

    ``method`` is ``"band"`` (scan of ``C`` meet ``D(delta-1)``) or ``"level-cover"``
    (scans of ``C`` meet ``V_L`` over level sets ``L``); ``witness`` is a codeword of
    weight below ``delta`` when the claim fails.
    """

    delta: int
    holds: bool
    method: str
    examined: int
    witness: Mat | None = None


def exact_min_distance(
    C: UTCode, budget: int = scan.SCAN_BUDGET, backend: str | None = None
) -> scan.ScanResult:
    """Exhaustive minimum flag-rank weight over the nonzero codewords."""
    return scan.min_weight(C.field, C.vectors, C.n, budget=budget, backend=backend)


def _codeword(C: UTCode, coeffs: Sequence[int]) -> Mat:
    F = C.field
    v = F.sum(F.mul(np.array(coeffs, dtype=np.int64)[:, None], C.vectors), axis=0)
    return Mat(F, np.asarray(v).reshape(C.n, C.n))


def _level_sets(n: int, size: int) -> Iterable[tuple[int, ...]]:
    return itertools.combinations(range(1, n + 1), size)


def level_positions(n: int, L: Sequence[int]) -> list[tuple[int, int]]:
    """Entries ``(a, b)`` (0-based) whose level interval ``{a+1, ..., b+1}`` lies inside ``L``."""
    Ls = set(L)
    return [(a, b) for a, b in ut_positions(n) if all(x in Ls for x in range(a + 1, b + 2))]


def certify_distance(
    C: UTCode,
    delta: int,
    method: str = "auto",
    budget: int = scan.SCAN_BUDGET,
    backend: str | None = None,
) -> Certificate:
    """Decide ``min distance >= delta`` without scanning all of ``C``.

    A matrix of weight ``w <= n`` lies in ``D(w, n)``, and its nonzero levels
    (the ``i`` with ``M_[i] != 0``) number at most ``w`` and cover every
    nonzero entry's interval.  So every codeword of weight below ``delta``
    sits in ``C`` meet ``D(delta - 1)`` and in some ``C`` meet ``V_L`` with
    ``|L| = min(delta - 1, n)``.  ``method="auto"`` scans the band when it
    fits the budget and otherwise the level cover.
    """
    n = C.n
    if not 1 <= delta <= n + 1:
        raise InvalidInput(f"certification needs 1 <= delta <= n+1 = {n + 1}, got {delta}")
    if method not in ("auto", "band", "level-cover"):
        raise InvalidInput(f"unknown certification method {method!r}")
    if delta == 1 or C.dim == 0:
        return Certificate(delta, True, "band", 0)
    q = C.field.order
    band = C.restrict(band_positions(n, delta - 1))
    if method == "band" or (method == "auto" and q**band.dim <= budget):
        res = scan.min_weight(C.field, band.vectors, n, bound=delta, budget=budget, backend=backend)
        if res.weight is not None and res.weight < delta:
            return Certificate(delta, False, "band", res.examined, _codeword(band, res.coefficients))
        return Certificate(delta, True, "band", res.examined)
    examined = 0
    for L in _level_sets(n, min(delta - 1, n)):
        sub = band.restrict(level_positions(n, L))
        if sub.dim == 0:
            continue
        res = scan.min_weight(C.field, sub.vectors, n, bound=delta, budget=budget, backend=backend)
        examined += res.examined
        if res.weight is not None and res.weight < delta:
            return Certificate(delta, False, "level-cover", examined, _codeword(sub, res.coefficients))
    return Certificate(delta, True, "level-cover", examined)


def certify_cost(C: UTCode, delta: int) -> int:
    """Codewords a band certification would enumerate, or the level-cover total if smaller."""
    n, q = C.n, C.field.order
    band = C.restrict(band_positions(n, delta - 1))
    cost = q**band.dim
    if cost > scan.SCAN_BUDGET:
        cover = 0
        for L in _level_sets(n, min(delta - 1, n)):
            cover += q ** band.restrict(level_positions(n, L)).dim
        cost = min(cost, cover)
    return cost


def min_flag_rank_distance(
    C: UTCode,
    mode: str = "exact",
    delta: int | None = None,
    budget: int = scan.SCAN_BUDGET,
    backend: str | None = None,
) -> int | None | Certificate:
    """``mode="exact"`` returns the minimum distance (``None`` for ``{0}``);
    ``mode="certify"`` returns the :class:`Certificate` for ``>= delta``."""
    if mode == "exact":
        return exact_min_distance(C, budget, backend).weight
    if mode == "certify":
        if delta is None:
            raise InvalidInput("certify mode needs a target delta")
        return certify_distance(C, delta, budget=budget, backend=backend)
    raise InvalidInput(f"unknown mode {mode!r}")


def optimum_distance_check(C: UTCode, budget: int = scan.SCAN_BUDGET, backend: str | None = None) -> bool:
    """True iff every nonzero codeword's middle block(s) ``M_[k]`` (and ``M_[k+1]`` for even ``n``) has rank ``k``."""
    n = C.n
    if C.dim == 0:
        return False
    k = (n + 1) // 2
    levels = [k] if n % 2 else [k, k + 1]
    for lv in levels:
        res = scan.min_weight(C.field, C.vectors, n, levels=[lv], bound=k, budget=budget, backend=backend)
        if res.weight < k:
            return False
    return True


def intersect_band(C: UTCode, r: int) -> UTCode:
    """``C`` meet ``D(r, n)``."""
    if not 0 <= r <= C.n:
        raise InvalidInput(f"band width {r} outside [0, {C.n}]")
    return C.restrict(band_positions(C.n, r))


@dataclass(frozen=True)
class BandEquivalence:
    delta: int
    mfrd: bool
    band_optimal: bool
    completion_mfrd: bool

    @property
    def consistent(self) -> bool:
        return self.mfrd == self.band_optimal == self.completion_mfrd


def band_completion(C: UTCode, delta: int) -> UTCode:
    """``(C meet D(delta-1)) + phi_{1,delta}(U(n - delta + 1))``."""
    return intersect_band(C, delta - 1) + embedded_full(C.field, C.n, C.n - delta + 1, 1, delta)


def band_equivalence_check(
    C: UTCode, delta: int, budget: int = scan.SCAN_BUDGET, backend: str | None = None
) -> BandEquivalence:
    """Evaluate the three equivalent MFRD characterizations at ``2 <= delta <= n``.

    (1) ``C`` is ``{n, f(n, delta), delta}``; (2) ``C`` meet ``D(delta-1)`` has
    codimension ``g(delta)`` in the band and distance at least ``delta``;
    (3) the band part completed by ``phi_{1,delta}(U(n-delta+1))`` is MFRD.
    Distances are decided by certification, which is exact here because a
    code meeting the bound with equality cannot exceed ``delta``.
    """
    n = C.n
    if not 2 <= delta <= n:
        raise InvalidInput(f"delta must lie in [2, n={n}], got {delta}")
    band = intersect_band(C, delta - 1)

    def at_least(code: UTCode) -> bool:
        return certify_distance(code, delta, budget=budget, backend=backend).holds

    c1 = C.dim == f(n, delta) and at_least(C)
    c2 = band_dim(n, delta - 1) - band.dim == g(delta) and at_least(band)
    comp = band_completion(C, delta)
    c3 = comp.dim == f(n, delta) and at_least(comp)
    return BandEquivalence(delta, c1, c2, c3)


def dual_code(C: UTCode) -> UTCode:
    """Orthogonal complement in ``U(n, F)`` under ``sum_ij M_ij N_ij``."""
    n = C.n
    out = np.zeros((C.parity.shape[0], n * n), dtype=np.int64)
    out[:, _flat(n, ut_positions(n))] = C.parity
    return UTCode(C.field, n, tuple(Mat(C.field, v.reshape(n, n)) for v in out))


def vectorize_band2(M: Mat) -> np.ndarray:
    """``(l_1, m_1, l_2, ..., m_{n-1}, l_n)`` from the diagonal ``l`` and superdiagonal ``m``."""
    n = M.rows
    if not M.is_upper() or np.triu(M.data, 2).any():
        raise InvalidInput("matrix is not in D(2, n)")
    v = np.zeros(2 * n - 1, dtype=np.int64)
    v[0::2] = np.diagonal(M.data)
    v[1::2] = np.diagonal(M.data, 1)
    return v


def band2_from_vector(F: FieldSpec, v: Sequence[int]) -> Mat:
    v = np.asarray(v, dtype=np.int64)
    if v.ndim != 1 or v.size % 2 == 0:
        raise InvalidInput("vector length must be odd")
    n = (v.size + 1) // 2
    M = np.diag(v[0::2])
    if n > 1:
        M = M + np.diag(v[1::2], 1)
    return Mat(F, M)


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class CodeReport:
    n: int
    q: int
    dim: int
    codim: int
    delta: int | None
    g: int | None
    f: int | None
    is_mfrd: bool
    is_quasi_mfrd: bool
    strategy: str

    def to_json(self) -> dict:
        return asdict(self)


def _report(C: UTCode, delta: int | None, strategy: str) -> CodeReport:
    n, t = C.n, C.dim
    gd = g(delta) if delta is not None else None
    fd = f(n, delta) if delta is not None else None
    mfrd = delta is not None and t == fd
    quasi = delta is not None and t >= 1 and delta == optimal_delta(n, t)
    return CodeReport(n, C.field.order, t, C.codim, delta, gd, fd, mfrd, quasi, strategy)


def code_report(
    C: UTCode,
    delta_hint: int | None = None,
    exact: bool = False,
    budget: int = scan.SCAN_BUDGET,
    backend: str | None = None,
) -> CodeReport:
    """Determine the minimum distance by the cheapest sound strategy and fill a report.

    The candidate distance is ``delta_hint`` or the ``delta`` at which the
    dimension meets the bound.  A candidate equal to ``w_max(n)`` is checked
    by the middle-block rank criterion; a candidate ``<= n`` whose bound is
    met with equality can be certified on low-weight subspaces (used when a
    hint is given or a full scan is over budget).  Everything else is a full
    scan.  Raises :class:`BudgetExceeded` when no strategy fits.
    """
    n, t, q = C.n, C.dim, C.field.order
    if t == 0:
        return _report(C, None, "full-scan")
    full_ok = q**t <= budget

    def full() -> CodeReport:
        return _report(C, exact_min_distance(C, budget, backend).weight, "full-scan")

    if exact:
        return full()
    cand = delta_hint
    if cand is None:
        cand = next((d for d in range(1, w_max(n) + 1) if f(n, d) == t), None)
    if cand is not None and not 1 <= cand <= w_max(n):
        raise InvalidInput(f"delta hint {cand} outside [1, {w_max(n)}]")
    if cand is not None and cand == w_max(n) and full_ok:
        if optimum_distance_check(C, budget, backend):
            return _report(C, cand, "optimum-criterion")
        return full()
    if (
        cand is not None
        and (delta_hint is not None or not full_ok)
        and cand <= n
        and t == f(n, cand)
    ):
        try:
            cert = certify_distance(C, cand, budget=budget, backend=backend)
        except BudgetExceeded:
            cert = None
        if cert is not None and cert.holds:
            return _report(C, cand, "band-certified")
        if cert is not None and not full_ok:
            return _report(C, None, "band-certified")
    if full_ok:
        return full()
    raise BudgetExceeded(
        f"no verification strategy fits: q^t = {q}^{t} and no certifiable distance candidate"
    )

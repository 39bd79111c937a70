"""Hamming-metric and rank-metric auxiliary codes (MDS and MRD building blocks)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from flagrank import scan
from flagrank.errors import InvalidInput
from flagrank.gf import FieldSpec, irreducible_poly
from flagrank.linalg import Mat, batch_rank, independent_rows, is_invertible, nullspace_array, rank_array


@dataclass(frozen=True, eq=False)
class HammingCode:
    """Linear ``[length, k]`` code given by a full-row-rank generator (``k = 0`` allowed)."""

    field: FieldSpec
    length: int
    generator: Mat

    def __post_init__(self) -> None:
        G = self.generator
        if G.field != self.field:
            raise InvalidInput("generator lives over a different field")
        if G.rows and G.cols != self.length:
            raise InvalidInput(f"generator has {G.cols} columns, expected {self.length}")
        if G.rows and rank_array(G.data, self.field) != G.rows:
            raise InvalidInput("generator rows are linearly dependent")

    @classmethod
    def from_generator(cls, field: FieldSpec, rows: Sequence[Sequence[int]], length: int | None = None) -> "HammingCode":
        """Code spanned by ``rows``; dependent rows are dropped."""
        a = np.array(rows, dtype=np.int64)
        if length is None:
            length = a.shape[1]
        a = a.reshape(-1, length)
        return cls(field, length, Mat(field, a[independent_rows(a, field)].reshape(-1, length)))

    @classmethod
    def from_parity_check(cls, field: FieldSpec, H: Mat) -> "HammingCode":
        return cls(field, H.cols, Mat(field, nullspace_array(H.data, field, H.cols).reshape(-1, H.cols)))

    @property
    def dim(self) -> int:
        return self.generator.rows

    def parity_check(self) -> Mat:
        N = nullspace_array(self.generator.data.reshape(-1, self.length), self.field, self.length)
        return Mat(self.field, N.reshape(-1, self.length))

    def contains(self, word: Sequence[int]) -> bool:
        H = self.parity_check().data
        if H.shape[0] == 0:
            return True
        return not self.field.matmul(H, np.array(word, dtype=np.int64)[:, None]).any()


@dataclass(frozen=True, eq=False)
class RankMetricCode:
    """Linear ``[rows x cols, k]`` matrix code with an independent basis."""

    field: FieldSpec
    shape: tuple[int, int]
    basis: tuple[Mat, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "shape", tuple(self.shape))
        for B in self.basis:
            if B.field != self.field or B.shape != self.shape:
                raise InvalidInput("basis matrix has the wrong field or shape")
        if self.basis and rank_array(self.vectors(), self.field) != len(self.basis):
            raise InvalidInput("basis matrices are linearly dependent")

    @classmethod
    def from_matrices(cls, field: FieldSpec, shape: tuple[int, int], mats: Sequence[Mat]) -> "RankMetricCode":
        """Code spanned by ``mats``; an independent subset is kept as the basis."""
        mats = list(mats)
        if not mats:
            return cls(field, shape, ())
        vec = np.stack([M.data.reshape(-1) for M in mats])
        return cls(field, shape, tuple(mats[i] for i in independent_rows(vec, field)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> np.ndarray:
        r, c = self.shape
        if not self.basis:
            return np.zeros((0, r * c), dtype=np.int64)
        return np.stack([B.data.reshape(-1) for B in self.basis])


@dataclass(frozen=True)
class HammingReport:
    k: int
    d_h: int | None
    is_mds: bool
    singleton_defect: int | None


@dataclass(frozen=True)
class RankReport:
    k: int
    d_r: int | None
    is_mrd: bool


def hamming_report(C: HammingCode, budget: int = scan.SCAN_BUDGET) -> HammingReport:
    """Exact minimum Hamming distance and Singleton defect ``n - d + 1 - k``."""
    res = scan.min_weight_generic(
        C.field, C.generator.data, lambda cw: np.count_nonzero(cw, axis=1), budget
    )
    if res.weight is None:
        return HammingReport(0, None, False, None)
    defect = C.length - res.weight + 1 - C.dim
    return HammingReport(C.dim, res.weight, defect == 0, defect)


def rankcode_report(C: RankMetricCode, budget: int = scan.SCAN_BUDGET) -> RankReport:
    r, c = C.shape
    res = scan.min_weight_generic(
        C.field, C.vectors(), lambda cw: batch_rank(cw.reshape(-1, r, c), C.field), budget
    )
    if res.weight is None:
        return RankReport(0, None, False)
    return RankReport(C.dim, res.weight, C.dim == max(r, c) * (min(r, c) - res.weight + 1))


def puncture(C: RankMetricCode, side: str, T: Mat, S: Sequence[int]) -> RankMetricCode:
    """Row (``T @ M`` restricted to rows ``S``) or column (``M @ T`` on columns ``S``) puncturing.

    ``S`` is 1-based.  Images may be dependent; the result keeps an independent subset.
    """
    r, c = C.shape
    size = {"row": r, "col": c}.get(side)
    if size is None:
        raise InvalidInput(f"side must be 'row' or 'col', got {side!r}")
    if T.shape != (size, size) or T.field != C.field or not is_invertible(T):
        raise InvalidInput(f"transform must be an invertible {size}x{size} matrix over {C.field}")
    idx = sorted(set(S))
    if len(idx) != len(S) or not 0 < len(idx) < size or idx[0] < 1 or idx[-1] > size:
        raise InvalidInput(f"index set must be a proper nonempty subset of [1, {size}]")
    sel = [i - 1 for i in idx]
    if side == "row":
        images = [Mat(C.field, (T @ B).data[sel, :]) for B in C.basis]
        shape = (len(sel), c)
    else:
        images = [Mat(C.field, (B @ T).data[:, sel]) for B in C.basis]
        shape = (r, len(sel))
    return RankMetricCode.from_matrices(C.field, shape, images)


def companion(F: FieldSpec, poly: Sequence[int]) -> Mat:
    """Companion matrix of a monic polynomial given low-to-high: ones below the diagonal, last column ``-c_i``."""
    m = len(poly) - 1
    A = np.zeros((m, m), dtype=np.int64)
    for i in range(1, m):
        A[i, i - 1] = 1
    A[:, m - 1] = F.neg(np.array(poly[:m], dtype=np.int64))
    return Mat(F, A)


def mrd_spread_set(F: FieldSpec, m: int) -> RankMetricCode:
    """``[m x m, m, m]`` code ``{Id, A, ..., A^(m-1)}`` for the companion ``A`` of the least degree-``m`` irreducible over ``F``."""
    if m < 1:
        raise InvalidInput("spread set size must be positive")
    A = companion(F, irreducible_poly(F, m))
    mats = [Mat.identity(F, m)]
    for _ in range(m - 1):
        mats.append(mats[-1] @ A)
    return RankMetricCode(F, (m, m), tuple(mats))


def mds3_feasible(q: int, n: int) -> bool:
    """Whether an arc of ``n`` points in PG(2, q) exists (``n <= q + 1``, or ``q + 2`` for even ``q``)."""
    return n <= q + 1 or (n == q + 2 and q % 2 == 0)


def mds_redundancy3(F: FieldSpec, n: int) -> HammingCode:
    """``[n, n-3, 4]`` MDS code whose parity check columns form an arc of PG(2, q)."""
    q = F.order
    if n < 4:
        raise InvalidInput(f"length must be at least 4, got {n}")
    if not mds3_feasible(q, n):
        raise InvalidInput(f"no [{n}, {n - 3}, 4] MDS code from an arc over GF({q})")
    cols = [(1, t, int(F.mul(t, t))) for t in range(min(n, q))]
    if n >= q + 1:
        cols.append((0, 0, 1))
    if n == q + 2:
        cols.append((0, 1, 0))
    H = Mat(F, np.array(cols, dtype=np.int64).T)
    return HammingCode.from_parity_check(F, H)


def pg_points(F: FieldSpec, dim: int) -> list[tuple[int, ...]]:
    """Normalized points of PG(dim, q): first nonzero coordinate 1, in lexicographic order."""
    if dim not in (2, 3):
        raise InvalidInput(f"projective dimension must be 2 or 3, got {dim}")
    out = []
    for v in itertools.product(range(F.order), repeat=dim + 1):
        nz = next((x for x in v if x), 0)
        if nz == 1:
            out.append(v)
    return out

"""Dense matrices over a :class:`FieldSpec` and the structural maps on them.

Index arguments of the public helpers are 1-based, matching the usual
``[n] = {1, ..., n}`` convention for rows and columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from flagrank.errors import InvalidInput
from flagrank.gf import FieldSpec


@dataclass(frozen=True, eq=False)
class Mat:
    """Immutable ``rows x cols`` matrix of field codes."""

    field: FieldSpec
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise InvalidInput(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        self.field.check_codes(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> "Mat":
        return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int | None = None) -> "Mat":
        return cls(field, np.zeros((rows, rows if cols is None else cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.data.T)

    def _check(self, other: "Mat") -> None:
        if other.field != self.field:
            raise InvalidInput("matrices live over different fields")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if other.shape != self.shape:
            raise InvalidInput("shape mismatch")
        return Mat(self.field, self.field.add(self.data, other.data))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if other.shape != self.shape:
            raise InvalidInput("shape mismatch")
        return Mat(self.field, self.field.sub(self.data, other.data))

    def __neg__(self) -> "Mat":
        return Mat(self.field, self.field.neg(self.data))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise InvalidInput("inner dimensions differ")
        return Mat(self.field, self.field.matmul(self.data, other.data))

    def scale(self, c: int) -> "Mat":
        return Mat(self.field, self.field.mul(self.data, int(c)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.field, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Mat({self.field}, {self.data.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def is_zero(self) -> bool:
        return not self.data.any()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_upper(self) -> bool:
        return self.is_square() and not np.tril(self.data, -1).any()


# -- elimination kernels on raw code arrays ---------------------------------


def rref_array(a: np.ndarray, F: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a code array and its pivot columns."""
    a = np.array(a, dtype=np.int64)
    r, c = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(c):
        if row == r:
            break
        nz = np.flatnonzero(a[row:, col])
        if nz.size == 0:
            continue
        p = row + int(nz[0])
        if p != row:
            a[[row, p]] = a[[p, row]]
        lead = int(a[row, col])
        if lead != 1:
            a[row] = F.mul(a[row], int(F.inv(lead)))
        f = a[:, col].copy()
        f[row] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] = F.sub(a[hit], F.mul(f[hit, None], a[row][None, :]))
        pivots.append(col)
        row += 1
    return a, pivots


def rank_array(a: np.ndarray, F: FieldSpec) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_array(a, F)[1])


def nullspace_array(a: np.ndarray, F: FieldSpec, ncols: int | None = None) -> np.ndarray:
    """Rows spanning the right kernel ``{x : a x^T = 0}``."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        c = a.shape[1] if a.ndim == 2 else int(ncols or 0)
        return np.eye(c, dtype=np.int64)
    R, piv = rref_array(a, F)
    c = a.shape[1]
    free = [j for j in range(c) if j not in set(piv)]
    out = np.zeros((len(free), c), dtype=np.int64)
    for k, fcol in enumerate(free):
        out[k, fcol] = 1
        for i, pcol in enumerate(piv):
            out[k, pcol] = int(F.neg(R[i, fcol]))
    return out


def independent_rows(a: np.ndarray, F: FieldSpec) -> list[int]:
    """Indices of the first maximal independent subset of rows, in order."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return []
    return rref_array(a.T, F)[1]


def batch_rank(a: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Ranks of a stack of matrices with shape ``(B, r, c)``."""
    a = np.array(a, dtype=np.int64)
    B, r, c = a.shape
    rank = np.zeros(B, dtype=np.int64)
    if r == 0 or c == 0 or B == 0:
        return rank
    rows = np.arange(r)
    for col in range(c):
        cand = (a[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = np.flatnonzero(has)
        p = np.argmax(cand[sel], axis=1)
        k = rank[sel]
        prow = a[sel, p].copy()
        a[sel, p] = a[sel, k]
        a[sel, k] = prow
        prow = F.mul(prow, F.inv(prow[:, col])[:, None])
        fac = a[sel, :, col]
        fac = np.where(rows[None, :] > k[:, None], fac, 0)
        a[sel] = F.sub(a[sel], F.mul(fac[:, :, None], prow[:, None, :]))
        rank[sel] += 1
    return rank


# -- public operations on Mat ----------------------------------------------


def rank(M: Mat) -> int:
    return rank_array(M.data, M.field)


def rref_and_nullspace(M: Mat) -> tuple[Mat, Mat | None]:
    """``(R, N)``: the RREF of ``M`` and a basis of its right kernel (``None`` if trivial)."""
    R, _ = rref_array(M.data, M.field)
    N = nullspace_array(M.data, M.field)
    return Mat(M.field, R), (Mat(M.field, N) if N.shape[0] else None)


def stack(mats: Iterable[Mat]) -> Mat:
    mats = list(mats)
    return Mat(mats[0].field, np.vstack([m.data for m in mats]))


def top_right_submatrix(M: Mat, i: int) -> Mat:
    """The top-rightmost ``i x (n - i + 1)`` block of a square matrix."""
    if not M.is_square():
        raise InvalidInput("top_right_submatrix needs a square matrix")
    n = M.rows
    if not 1 <= i <= n:
        raise InvalidInput(f"level {i} outside [1, {n}]")
    return Mat(M.field, M.data[:i, i - 1:])


def embed_phi(M: Mat, i: int, j: int, n: int) -> Mat:
    """Place the square ``M`` at rows ``i..`` and columns ``j..`` of an ``n x n`` zero matrix."""
    if not M.is_square():
        raise InvalidInput("embed_phi needs a square block")
    ell = M.rows
    if i < 1 or j < 1 or i + ell - 1 > n or j + ell - 1 > n:
        raise InvalidInput(f"{ell}x{ell} block at ({i},{j}) does not fit in {n}x{n}")
    out = np.zeros((n, n), dtype=np.int64)
    out[i - 1:i - 1 + ell, j - 1:j - 1 + ell] = M.data
    return Mat(M.field, out)


def project_upper(M: Mat) -> Mat:
    if not M.is_square():
        raise InvalidInput("project_upper needs a square matrix")
    return Mat(M.field, np.triu(M.data))


def select_submatrix(M: Mat, I: Sequence[int], J: Sequence[int]) -> Mat:
    """Rows ``I`` and columns ``J`` (1-based, order preserved)."""
    I, J = list(I), list(J)
    if not I or not J:
        raise InvalidInput("index sets must be nonempty")
    if min(I) < 1 or max(I) > M.rows or min(J) < 1 or max(J) > M.cols:
        raise InvalidInput("index out of range")
    return Mat(M.field, M.data[np.ix_([i - 1 for i in I], [j - 1 for j in J])])


def is_invertible(M: Mat) -> bool:
    return M.is_square() and rank(M) == M.rows

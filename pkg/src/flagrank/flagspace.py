"""Degenerate flags in the big cell and their identification with ``U(n, F)``.

Level ``i`` of a flag in ``F^(n+1)`` is the row space of ``[Id_i | A_i]``; the
flag is degenerate when dropping coordinate ``i + 1`` maps level ``i`` into
level ``i + 1``.  ``phi_a`` sends such a flag to the upper triangular ``X``
with ``X_[i] = A_i`` and turns the sum-subspace distance into twice the
flag-rank distance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from flagrank.errors import InvalidInput
from flagrank.gf import FieldSpec
from flagrank.linalg import Mat, rank_array


@dataclass(frozen=True, eq=False)
class DegenerateFlag:
    """``levels[i-1]`` is the ``i x (n+1)`` generator ``[Id_i | A_i]``."""

    field: FieldSpec
    n: int
    levels: tuple[Mat, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(self.levels))
        if len(self.levels) != self.n:
            raise InvalidInput(f"expected {self.n} levels, got {len(self.levels)}")
        for i, G in enumerate(self.levels, start=1):
            if G.field != self.field or G.shape != (i, self.n + 1):
                raise InvalidInput(f"level {i} must be an {i}x{self.n + 1} matrix over {self.field}")

    @classmethod
    def from_blocks(cls, field: FieldSpec, blocks: list) -> "DegenerateFlag":
        """Flag from the ``A_i`` blocks alone (the identities are implied)."""
        n = len(blocks)
        levels = []
        for i, A in enumerate(blocks, start=1):
            A = np.array(A, dtype=np.int64).reshape(i, n + 1 - i)
            levels.append(Mat(field, np.hstack([np.eye(i, dtype=np.int64), A])))
        return cls(field, n, tuple(levels))

    def block(self, i: int) -> np.ndarray:
        """``A_i`` as a code array."""
        return self.levels[i - 1].data[:, i:]

    def to_json(self) -> dict:
        return {
            "kind": "flag",
            **self.field.to_json(),
            "n": self.n,
            "levels": [self.block(i).tolist() for i in range(1, self.n + 1)],
        }


def _big_cell(G: np.ndarray, i: int) -> bool:
    return np.array_equal(G[:, :i], np.eye(i, dtype=np.int64))


def check_degenerate(flag: DegenerateFlag) -> bool:
    """Big-cell form on every level and ``pr_{i+1}(V_i)`` inside ``V_{i+1}``."""
    F = flag.field
    for i in range(1, flag.n + 1):
        if not _big_cell(flag.levels[i - 1].data, i):
            return False
    for i in range(1, flag.n):
        proj = flag.levels[i - 1].data.copy()
        proj[:, i] = 0  # coordinate i+1, 0-based column i
        nxt = flag.levels[i].data
        if rank_array(np.vstack([nxt, proj]), F) != rank_array(nxt, F):
            return False
    return True


def phi_a(flag: DegenerateFlag) -> Mat:
    """Upper triangular ``X`` with ``X_[i] = A_i`` for every level."""
    if not check_degenerate(flag):
        raise InvalidInput("not a degenerate flag in the big cell")
    n = flag.n
    X = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n + 1):
        X[:i, i - 1:] = flag.block(i)
    for i in range(1, n + 1):
        if not np.array_equal(X[:i, i - 1:], flag.block(i)):
            raise InvalidInput(f"level {i} disagrees with the lower levels")
    if np.tril(X, -1).any():
        raise InvalidInput("flag blocks do not assemble to an upper triangular matrix")
    return Mat(flag.field, X)


def phi_a_inverse(X: Mat) -> DegenerateFlag:
    """The flag with level ``i`` spanned by ``[Id_i | X_[i]]``."""
    if not X.is_upper():
        raise InvalidInput("matrix must be square upper triangular")
    n = X.rows
    return DegenerateFlag.from_blocks(X.field, [X.data[:i, i - 1:] for i in range(1, n + 1)])


def sum_subspace_distance(U: DegenerateFlag, V: DegenerateFlag) -> int:
    """``sum_i dim(U_i + V_i) - dim(U_i meet V_i)``."""
    if U.field != V.field or U.n != V.n:
        raise InvalidInput("flags differ in field or length")
    total = 0
    for i, (Gu, Gv) in enumerate(zip(U.levels, V.levels), start=1):
        total += 2 * rank_array(np.vstack([Gu.data, Gv.data]), U.field) - 2 * i
    return total

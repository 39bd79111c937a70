"""MFRD code constructions, the named example codes, and a randomized search.

Each construction returns a :class:`UTCode` whose parameters
``{n, t, delta}`` (size, dimension, minimum flag-rank distance) meet the
Singleton-like bound ``t = f(n, delta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from flagrank import scan
from flagrank.classiccodes import HammingCode, mds3_feasible, mds_redundancy3, mrd_spread_set, pg_points
from flagrank.errors import InvalidInput
from flagrank.flagcodes import (
    UTCode,
    band2_from_vector,
    band_positions,
    code_report,
    embedded_full,
    f,
    g,
)
from flagrank.gf import FieldSpec
from flagrank.linalg import Mat, embed_phi, nullspace_array, project_upper, rank_array

Point = tuple[int, ...]


def _expect_dim(C: UTCode, t: int, what: str) -> UTCode:
    if C.dim != t:
        raise RuntimeError(f"{what}: expected dimension {t}, got {C.dim}")
    return C


def _embed_code(F: FieldSpec, n: int, mats: Sequence[Mat], i: int, j: int, project: bool = False) -> list[Mat]:
    out = [embed_phi(M, i, j, n) for M in mats]
    return [project_upper(M) for M in out] if project else out


def construction_A(F: FieldSpec, k: int, eps: int) -> UTCode:
    """``{2k-1+eps, k+eps, k(k+eps)}`` optimum-distance code: the ``(k+eps)``-spread set placed at ``(1, k)``, cut to upper triangular."""
    if k < 1 or eps not in (0, 1):
        raise InvalidInput(f"need k >= 1 and eps in {{0, 1}}, got k={k}, eps={eps}")
    n = 2 * k - 1 + eps
    D = mrd_spread_set(F, k + eps)
    C = UTCode.span(F, n, _embed_code(F, n, D.basis, 1, k, project=True))
    return _expect_dim(C, k + eps, "construction A")


def construction_B(F: FieldSpec, k: int) -> UTCode:
    """``{2k-1, k+1, k^2-1}`` code: the ``(k+1)``-spread set placed at ``(1, k-1)``, cut to upper triangular."""
    if k < 2:
        raise InvalidInput(f"need k >= 2, got {k}")
    n = 2 * k - 1
    D = mrd_spread_set(F, k + 1)
    C = UTCode.span(F, n, _embed_code(F, n, D.basis, 1, k - 1, project=True))
    return _expect_dim(C, k + 1, "construction B")


def construction_delta2(F: FieldSpec, n: int) -> UTCode:
    """``{n, n(n+1)/2 - 1, 2}``: diagonals summing to zero, plus everything strictly above the diagonal."""
    if n < 2:
        raise InvalidInput(f"need n >= 2, got {n}")
    ones = HammingCode.from_parity_check(F, Mat(F, np.ones((1, n), dtype=np.int64)))
    diag = [Mat(F, np.diag(row)) for row in ones.generator.data]
    C = UTCode.span(F, n, diag) + embedded_full(F, n, n - 1, 1, 2)
    return _expect_dim(C, f(n, 2), "delta=2 construction")


# -- delta = 3 ---------------------------------------------------------------


@dataclass(frozen=True)
class PointChoice:
    """Points ``P_1..P_n`` and ``Q_1..Q_{n-1}`` of PG(2, q) as normalized coordinate triples."""

    P: tuple[Point, ...]
    Q: tuple[Point, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "P", tuple(tuple(int(x) for x in p) for p in self.P))
        object.__setattr__(self, "Q", tuple(tuple(int(x) for x in p) for p in self.Q))

    @property
    def n(self) -> int:
        return len(self.P)

    def parity_check(self, F: FieldSpec) -> Mat:
        """``H = (u_1 | v_1 | u_2 | ... | v_{n-1} | u_n)``."""
        cols: list[Point] = []
        for i, p in enumerate(self.P):
            cols.append(p)
            if i < len(self.Q):
                cols.append(self.Q[i])
        return Mat(F, np.array(cols, dtype=np.int64).T)

    def validate(self, F: FieldSpec) -> None:
        pts = set(pg_points(F, 2))
        if len(self.Q) != self.n - 1:
            raise InvalidInput(f"need {self.n - 1} Q points for {self.n} P points")
        for p in self.P + self.Q:
            if p not in pts:
                raise InvalidInput(f"{p} is not a normalized point of PG(2, {F.order})")
        if len(set(self.P)) != self.n:
            raise InvalidInput("P points must be pairwise distinct")
        for i, qpt in enumerate(self.Q):
            if rank_array(np.array([self.P[i], self.P[i + 1], qpt]), F) != 3:
                raise InvalidInput(f"Q_{i + 1} lies on the line through P_{i + 1} and P_{i + 2}")


def default_point_choice(F: FieldSpec, n: int) -> PointChoice:
    """First ``n`` points in order as the P's; each ``Q_i`` is the first point off the line ``P_i P_{i+1}``."""
    pts = pg_points(F, 2)
    if n > len(pts):
        raise InvalidInput(f"n={n} exceeds the {len(pts)} points of PG(2, {F.order})")
    P = pts[:n]
    Q = []
    for i in range(n - 1):
        Q.append(next(p for p in pts if rank_array(np.array([P[i], P[i + 1], p]), F) == 3))
    return PointChoice(tuple(P), tuple(Q))


def construction_delta3(F: FieldSpec, n: int, choice: PointChoice | None = None) -> UTCode:
    """``{n, n(n+1)/2 - 3, 3}``: the N-avoiding band-2 code with parity check from ``choice``,
    plus ``phi_{1,3}(U(n-2))``."""
    q = F.order
    if n < 3:
        raise InvalidInput(f"delta=3 needs n >= 3, got {n}")
    if n > q * q + q + 1:
        raise InvalidInput(f"n={n} exceeds |PG(2, {q})| = {q * q + q + 1}")
    if choice is None:
        choice = default_point_choice(F, n)
    elif choice.n != n:
        raise InvalidInput(f"point choice has {choice.n} points, need {n}")
    choice.validate(F)
    D = HammingCode.from_parity_check(F, choice.parity_check(F))
    band = UTCode.span(F, n, [band2_from_vector(F, w) for w in D.generator.data])
    C = band + embedded_full(F, n, n - 2, 1, 3)
    return _expect_dim(C, f(n, 3), "delta=3 construction")


def n_sets(n: int) -> list[frozenset[int]]:
    """The 1-based forbidden supports ``X_{i,j}``, ``Y_i``, ``Z_i`` in ``[2n-1]``."""
    X = [frozenset({2 * i - 1, 2 * j - 1}) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    Y = [frozenset({2 * i}) for i in range(1, n)]
    Z = [frozenset({2 * i - 1, 2 * i, 2 * i + 1}) for i in range(1, n)]
    return X + Y + Z


def n_avoiding_check(C: HammingCode, method: str = "auto", H: Mat | None = None) -> bool:
    """No nonzero codeword of ``C`` (length ``2n - 1``) has support inside an N-set.

    ``method="parity"`` uses that a codeword supported inside ``S`` exists iff
    the columns of a parity check indexed by ``S`` are dependent (for three
    rows: distinct P's and each ``Q_i`` off its line).  ``method="scan"``
    enumerates codeword supports.  ``"auto"`` is the parity path.
    """
    N = C.length
    if N < 3 or N % 2 == 0:
        raise InvalidInput(f"length must be odd and at least 3, got {N}")
    n = (N + 1) // 2
    sets = n_sets(n)
    if method in ("auto", "parity"):
        Hd = (C.parity_check() if H is None else H).data.reshape(-1, N)
        for S in sets:
            cols = sorted(S)
            if Hd.shape[0] == 0 or rank_array(Hd[:, [c - 1 for c in cols]], C.field) < len(cols):
                return False
        return True
    if method != "scan":
        raise InvalidInput(f"unknown method {method!r}")
    if C.dim == 0:
        return True
    scan.check_budget(C.field.order, C.dim)
    if N > 62:
        raise InvalidInput("support scan handles length at most 62")
    weights = np.int64(1) << np.arange(N, dtype=np.int64)
    masks = [sum(1 << (c - 1) for c in S) for S in sets]
    for _, _, cw in scan.iter_projective(C.field, C.generator.data):
        sups = (cw != 0).astype(np.int64) @ weights
        if any(((sups & ~np.int64(m)) == 0).any() for m in masks):
            return False
    return True


# -- delta = 4 ---------------------------------------------------------------


def construction_C(F: FieldSpec, n: int) -> UTCode:
    """``{n, n(n+1)/2 - 4, 4}``: 2x2 spread sets at ``(i, i+1)``, an ``[n, n-3, 4]`` MDS code on the
    diagonal, and ``phi_{1,4}(U(n-3))``."""
    q = F.order
    if n < 4:
        raise InvalidInput(f"delta=4 needs n >= 4, got {n}")
    if not mds3_feasible(q, n):
        raise InvalidInput(f"no [{n}, {n - 3}, 4] MDS code over GF({q}) from an arc")
    S2 = mrd_spread_set(F, 2)
    mats: list[Mat] = []
    for i in range(1, n - 1):
        mats += _embed_code(F, n, S2.basis, i, i + 1)
    mats += [Mat(F, np.diag(row)) for row in mds_redundancy3(F, n).generator.data]
    C = UTCode.span(F, n, mats) + embedded_full(F, n, n - 3, 1, 4)
    return _expect_dim(C, f(n, 4), "delta=4 construction")


# -- named examples ----------------------------------------------------------


def _m(*rows: str) -> list[list[int]]:
    return [[int(c) for c in r] for r in rows]


SPREAD_GENERATORS = {
    "ex4_6": [
        _m("100", "010", "001"),
        _m("001", "101", "010"),
        _m("010", "011", "101"),
    ],
    "ex4_9": [
        _m("1000", "0100", "0010", "0001"),
        _m("0001", "1001", "0100", "0010"),
        _m("0010", "0011", "1001", "0100"),
        _m("0100", "0110", "0011", "1001"),
    ],
}

EXAMPLE_GENERATORS = {
    "ex4_6": [
        _m("0100", "0010", "0001", "0000"),
        _m("0001", "0101", "0010", "0000"),
        _m("0010", "0011", "0001", "0000"),
    ],
    "ex4_9": [
        _m("01000", "00100", "00010", "00001", "00000"),
        _m("00001", "01001", "00100", "00010", "00000"),
        _m("00010", "00011", "00001", "00000", "00000"),
        _m("00100", "00110", "00011", "00001", "00000"),
    ],
    "ex4_3_2": [
        _m("1000", "0110", "0000", "0000"),
        _m("1000", "0000", "0011", "0000"),
        _m("0100", "0010", "0001", "0000"),
        _m("1000", "0010", "0001", "0001"),
        _m("0010", "0000", "0000", "0000"),
        _m("0000", "0001", "0000", "0000"),
        _m("0001", "0000", "0000", "0000"),
    ],
    "ex4_26": [
        _m("0001", "0000", "0000", "0000"),
        _m("0100", "0010", "0000", "0000"),
        _m("0010", "0110", "0000", "0000"),
        _m("0000", "0010", "0001", "0000"),
        _m("0000", "0001", "0011", "0000"),
        _m("1000", "0100", "0010", "0001"),
    ],
    "ex5_5": [
        _m("00111", "01000", "00000", "00011", "00001"),
        _m("10100", "00111", "00010", "00001", "00001"),
        _m("01000", "01110", "00111", "00011", "00001"),
        _m("11000", "01100", "00110", "00010", "00000"),
        _m("10101", "00010", "00000", "00010", "00001"),
        _m("11101", "00100", "00001", "00000", "00000"),
        _m("10111", "00101", "00000", "00001", "00001"),
        _m("10000", "00100", "00010", "00000", "00001"),
        _m("11000", "01110", "00110", "00001", "00001"),
    ],
}

# parameters {n, t, delta} stated alongside each example (ex5_5 holds for q in {2, 4})
EXAMPLE_PARAMETERS = {
    "ex4_6": (4, 3, 6),
    "ex4_9": (5, 4, 8),
    "ex4_3_2": (4, 7, 3),
    "ex4_26": (4, 6, 4),
    "ex5_5": (5, 9, 5),
}

HAMMING_7_4_PARITY = _m("1010101", "0111001", "0100111")


def named_example(name: str, F: FieldSpec) -> UTCode:
    """The hard-coded generators of example ``name`` read over ``F``."""
    if name not in EXAMPLE_GENERATORS:
        raise InvalidInput(f"unknown example {name!r}; choose from {sorted(EXAMPLE_GENERATORS)}")
    mats = [Mat.from_rows(F, m) for m in EXAMPLE_GENERATORS[name]]
    return UTCode(F, mats[0].rows, tuple(mats))


def example_point_choice() -> PointChoice:
    """The P/Q points read off the columns of the binary [7,4] Hamming parity check."""
    cols = list(zip(*HAMMING_7_4_PARITY))
    return PointChoice(tuple(cols[0::2]), tuple(cols[1::2]))


# -- randomized search -------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    """``code`` is a verified MFRD code found at ``trial`` (0-based), or ``None`` after ``trials_run``."""

    code: UTCode | None
    trial: int | None
    trials_run: int
    rank_deficient: int


def random_mfrd_search(F: FieldSpec, n: int, delta: int, trials: int, seed: int) -> SearchResult:
    """Sample codimension-``g(delta)`` subspaces of ``D(delta-1, n)`` and keep the first with distance ``>= delta``.

    Each trial draws a random ``g(delta) x dim D(delta-1)`` parity map; its
    kernel, completed by ``phi_{1,delta}(U(n-delta+1))``, has dimension
    ``f(n, delta)``, and it is MFRD exactly when the band part has no
    codeword of weight below ``delta``.  Failure is not a nonexistence proof.
    """
    q = F.order
    if not 2 <= delta <= n:
        raise InvalidInput(f"search needs 2 <= delta <= n, got delta={delta}, n={n}")
    if trials < 0:
        raise InvalidInput("trials must be nonnegative")
    pos = band_positions(n, delta - 1)
    b, r = len(pos), g(delta)
    if r > b:
        raise InvalidInput(f"codimension {r} exceeds band dimension {b}")
    scan.check_budget(q, b - r)
    flat = [i * n + j for i, j in pos]
    tail = embedded_full(F, n, n - delta + 1, 1, delta)
    rng = np.random.default_rng(seed)
    deficient = 0
    for trial in range(trials):
        P = rng.integers(0, q, size=(r, b))
        if rank_array(P, F) < r:
            deficient += 1
            continue
        K = nullspace_array(P, F, b)
        vecs = np.zeros((K.shape[0], n * n), dtype=np.int64)
        vecs[:, flat] = K
        res = scan.min_weight(F, vecs, n, bound=delta)
        if res.weight is not None and res.weight < delta:
            continue
        C = UTCode.from_vectors(F, n, vecs) + tail
        rep = code_report(C, delta_hint=delta)
        if rep.is_mfrd and rep.delta == delta:
            return SearchResult(C, trial, trial + 1, deficient)
    return SearchResult(None, None, trials, deficient)


"""Singleton-like bounds in telescoping and closed form, and existence limits for small distances."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from flagrank.classiccodes import mds3_feasible
from flagrank.errors import InvalidInput
from flagrank.flagcodes import f, g, w_max
from flagrank.gf import FieldSpec

EXISTS = "EXISTS"
NONEXISTENT = "NONEXISTENT"
CONSTRUCTIBLE = "CONSTRUCTIBLE"
UNKNOWN = "UNKNOWN"


def summand(n: int, b: int) -> int:
    """``b``-th term of the telescoping sum: ``w_max(n - b + 1) - w_max(n - b)``, i.e. ``ceil((n - b + 1) / 2)``."""
    return (n - b + 2) // 2


@dataclass(frozen=True)
class SLJDecomposition:
    """``w_max(n) - delta = a_1 + ... + a_s + j`` with the greedy (largest) ``s`` and ``0 <= j < a_{s+1}``."""

    n: int
    delta: int
    s: int
    ell: int
    j: int
    alpha_s: int
    dim_bound: int

    def reconstruct(self) -> int:
        """``w_max(n) - delta`` recomputed from ``(s, j)``."""
        return sum(summand(self.n, b) for b in range(1, self.s + 1)) + self.j

    def to_json(self) -> dict:
        return asdict(self)


def slj_decomposition(n: int, delta: int) -> SLJDecomposition:
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")
    wm = w_max(n)
    if not 1 <= delta <= wm:
        raise InvalidInput(f"delta={delta} outside [1, {wm}] for n={n}")
    k = (n + 1) // 2
    rest, s = wm - delta, 0
    while s < n and summand(n, s + 1) <= rest:
        s += 1
        rest -= summand(n, s)
    j = rest
    if s == 0:
        ell = 0
    else:
        last = summand(n, s)
        ell = k + 1 - last if n % 2 == 0 else k - last
    alpha = (n - s) // 2 + j + 1 if (n - s) % 2 == 0 else (n - s + 1) // 2 + j
    dim_bound = s * (2 * n - s + 1) // 2 + alpha
    return SLJDecomposition(n, delta, s, ell, j, alpha, dim_bound)


def bound_consistency(n: int) -> bool:
    """Whether the telescoping bound equals ``f(n, delta)`` for every ``delta``."""
    if not 1 <= n <= 64:
        raise InvalidInput(f"n must lie in [1, 64], got {n}")
    return all(slj_decomposition(n, d).dim_bound == f(n, d) for d in range(1, w_max(n) + 1))


@dataclass(frozen=True)
class CorollaryInfo:
    """Printed length bound ``floor((delta-2)(q^g - 1)/(q^(g-1) - 1))``; informational only.

    ``m_delta`` (the longest ``[m, m - g(delta), delta]`` Hamming code) would need
    code tables and is left uncomputed.
    """

    q: int
    delta: int
    g: int
    value: int
    status: str = "INFORMATIONAL"
    m_delta: int | None = None

    def to_json(self) -> dict:
        return asdict(self)


def corollary_info(F: FieldSpec, delta: int) -> CorollaryInfo:
    gd = g(delta)
    if gd < 2:
        raise InvalidInput(f"needs g(delta) >= 2, got g({delta}) = {gd}")
    q = F.order
    return CorollaryInfo(q, delta, gd, (delta - 2) * (q**gd - 1) // (q ** (gd - 1) - 1))


@dataclass(frozen=True)
class Verdict:
    q: int
    delta: int
    n: int
    status: str
    reason: str

    def to_json(self) -> dict:
        return asdict(self)


def cap_bound(q: int) -> int:
    """Largest cap in PG(3, q)."""
    return 8 if q == 2 else q * q + 1


def existence_limits(F: FieldSpec, delta: int, n: int) -> Verdict:
    """Existence of ``{n, f(n, delta), delta}`` MFRD codes for ``delta`` in ``{3, 4}``."""
    q = F.order
    if delta not in (3, 4):
        raise InvalidInput(f"existence limits cover delta 3 and 4, got {delta}")
    if n < 1:
        raise InvalidInput(f"n must be positive, got {n}")

    def v(status: str, reason: str) -> Verdict:
        return Verdict(q, delta, n, status, reason)

    if delta > w_max(n):
        return v(NONEXISTENT, f"delta exceeds the maximum weight w_max({n}) = {w_max(n)}")
    if delta == 3:
        pg = q * q + q + 1
        if n <= pg:
            return v(EXISTS, f"n <= |PG(2, {q})| = {pg}")
        return v(NONEXISTENT, f"n > |PG(2, {q})| = {pg}")
    if delta == w_max(n):
        return v(CONSTRUCTIBLE, "optimum distance: spread-set construction")
    cap = cap_bound(q)
    if n > cap:
        return v(NONEXISTENT, f"n exceeds the largest cap in PG(3, {q}), of size {cap}")
    if mds3_feasible(q, n):
        return v(CONSTRUCTIBLE, f"an [{n}, {n - 3}, 4] MDS code exists over GF({q})")
    return v(UNKNOWN, "between the MDS construction range and the cap bound")

from __future__ import annotations

import pytest

from flagrank import bounds
from flagrank.bounds import (
    CONSTRUCTIBLE,
    EXISTS,
    NONEXISTENT,
    UNKNOWN,
    bound_consistency,
    corollary_info,
    existence_limits,
    slj_decomposition,
    summand,
)
from flagrank.errors import InvalidInput
from flagrank.flagcodes import f, g, w_max
from flagrank.gf import gf


def test_slj_examples():
    d = slj_decomposition(4, 4)
    assert (d.s, d.j, d.alpha_s, d.dim_bound) == (1, 0, 2, 6)
    d = slj_decomposition(5, 9)
    assert (d.s, d.j, d.alpha_s, d.dim_bound) == (0, 0, 3, 3)
    for k in range(1, 10):
        assert slj_decomposition(2 * k - 1, k * k).dim_bound == k


def test_slj_unique_and_reconstructs():
    for n in range(1, 16):
        for delta in range(1, w_max(n) + 1):
            target = w_max(n) - delta
            hits = [
                (s, j)
                for s in range(n)
                for j in range(summand(n, s + 1))
                if sum(summand(n, b) for b in range(1, s + 1)) + j == target
            ]
            d = slj_decomposition(n, delta)
            assert hits == [(d.s, d.j)]
            assert d.reconstruct() == target


def test_summands_telescope():
    for n in range(1, 20):
        assert sum(summand(n, b) for b in range(1, n + 1)) == w_max(n)


@pytest.mark.parametrize("n", [4, 5, 12])
def test_bound_consistency_examples(n):
    assert bound_consistency(n)


def test_bound_consistency_all():
    assert all(bound_consistency(n) for n in range(1, 65))
    with pytest.raises(InvalidInput):
        bound_consistency(65)


def test_monotonicity():
    assert all(g(d) <= g(d + 1) for d in range(1, 200))
    for n in range(1, 12):
        assert all(f(n, d) >= f(n, d + 1) for d in range(1, w_max(n)))


def test_corollary_values():
    assert corollary_info(gf(2), 4).value == 4
    assert corollary_info(gf(2), 3).value == 2
    assert corollary_info(gf(3), 4).value == 6
    info = corollary_info(gf(2), 4)
    assert info.status == "INFORMATIONAL" and info.m_delta is None
    with pytest.raises(InvalidInput):
        corollary_info(gf(2), 2)


def test_existence_examples():
    F2 = gf(2)
    assert existence_limits(F2, 3, 7).status == EXISTS
    assert existence_limits(F2, 3, 8).status == NONEXISTENT
    assert existence_limits(F2, 4, 9).status == NONEXISTENT
    assert existence_limits(F2, 4, 4).status == CONSTRUCTIBLE
    assert existence_limits(F2, 4, 5).status == UNKNOWN
    assert existence_limits(F2, 4, 3).status == CONSTRUCTIBLE
    assert existence_limits(F2, 4, 2).status == NONEXISTENT
    assert existence_limits(gf(3), 3, 13).status == EXISTS
    assert existence_limits(gf(4), 4, 6).status == CONSTRUCTIBLE
    assert existence_limits(gf(4), 4, 17).status == UNKNOWN
    assert existence_limits(gf(4), 4, 18).status == NONEXISTENT
    assert bounds.cap_bound(2) == 8 and bounds.cap_bound(5) == 26
    with pytest.raises(InvalidInput):
        existence_limits(F2, 5, 6)


def test_invalid_slj():
    with pytest.raises(InvalidInput):
        slj_decomposition(3, 5)
    with pytest.raises(InvalidInput):
        slj_decomposition(0, 1)

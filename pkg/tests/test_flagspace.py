from __future__ import annotations

import numpy as np
import pytest
from oracle import oracle_for, rank as oracle_rank

from flagrank.errors import InvalidInput
from flagrank.flagcodes import flag_rank_distance, flag_rank_weight
from flagrank.flagspace import DegenerateFlag, check_degenerate, phi_a, phi_a_inverse, sum_subspace_distance
from flagrank.gf import gf
from flagrank.linalg import Mat

MIXED_BLOCKS = [
    [[0, 1, 2, 3]],
    [[1, 2, 3], [4, 5, 6]],
    [[2, 3], [5, 6], [0, 8]],
    [[3], [6], [8], [0]],
]
MIXED_X = [[0, 1, 2, 3], [0, 4, 5, 6], [0, 0, 0, 8], [0, 0, 0, 0]]


def mixed_flag() -> DegenerateFlag:
    return DegenerateFlag.from_blocks(gf(11), MIXED_BLOCKS)


def test_mixed_flag_maps_to_matrix():
    flag = mixed_flag()
    assert check_degenerate(flag)
    assert phi_a(flag).tolist() == MIXED_X
    back = phi_a_inverse(Mat.from_rows(gf(11), MIXED_X))
    assert [back.block(i).tolist() for i in range(1, 5)] == MIXED_BLOCKS


def test_not_a_classical_flag():
    # level 2 is not contained in level 3 before projection
    flag = mixed_flag()
    G2, G3 = flag.levels[1].data, flag.levels[2].data
    F = gf(11)
    O = oracle_for(F)
    assert oracle_rank(O, np.vstack([G3, G2]).tolist()) > oracle_rank(O, G3.tolist())


def test_zero_matrix_gives_coordinate_flag():
    F = gf(3)
    flag = phi_a_inverse(Mat.zeros(F, 3))
    for i, G in enumerate(flag.levels, start=1):
        assert G.data.tolist() == np.eye(i, 4, dtype=np.int64).tolist()
    assert phi_a(DegenerateFlag.from_blocks(F, [np.zeros((i, 4 - i)) for i in range(1, 4)])).is_zero()


@pytest.mark.parametrize("q,n", [(2, 1), (2, 4), (3, 3), (4, 5), (5, 2), (9, 4)])
def test_round_trip(q, n):
    F = gf(q)
    rng = np.random.default_rng(q * 10 + n)
    for _ in range(20):
        X = Mat(F, np.triu(rng.integers(0, q, (n, n))))
        flag = phi_a_inverse(X)
        assert check_degenerate(flag)
        assert phi_a(flag) == X


def test_corrupted_flag_rejected():
    F = gf(11)
    blocks = [np.array(b) for b in MIXED_BLOCKS]
    blocks[1][0, 1] = 9  # first row of A_2 no longer extends A_1
    flag = DegenerateFlag.from_blocks(F, blocks)
    assert not check_degenerate(flag)
    with pytest.raises(InvalidInput):
        phi_a(flag)
    bad = mixed_flag().levels
    swapped = (bad[0], Mat(F, bad[1].data[::-1]), *bad[2:])
    assert not check_degenerate(DegenerateFlag(F, 4, swapped))


def test_sum_subspace_distance_examples():
    F = gf(11)
    flag = mixed_flag()
    assert sum_subspace_distance(flag, flag) == 0
    zero = phi_a_inverse(Mat.zeros(F, 4))
    assert sum_subspace_distance(flag, zero) == 12
    assert flag_rank_weight(phi_a(flag)) == 6
    a = DegenerateFlag.from_blocks(F, [[[3]]])
    b = DegenerateFlag.from_blocks(F, [[[5]]])
    assert sum_subspace_distance(a, b) == 2
    with pytest.raises(InvalidInput):
        sum_subspace_distance(a, flag)


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_isometry(q, n):
    F = gf(q)
    rng = np.random.default_rng(1000 * q + n)
    for _ in range(200):
        X, Y = (Mat(F, np.triu(rng.integers(0, q, (n, n)))) for _ in range(2))
        assert sum_subspace_distance(phi_a_inverse(X), phi_a_inverse(Y)) == 2 * flag_rank_distance(X, Y)


def test_shape_validation():
    F = gf(2)
    with pytest.raises(InvalidInput):
        DegenerateFlag(F, 2, (Mat.from_rows(F, [[1, 0, 0]]),))
    with pytest.raises(InvalidInput):
        phi_a_inverse(Mat.from_rows(F, [[0, 0], [1, 0]]))
    assert not check_degenerate(DegenerateFlag(F, 1, (Mat.from_rows(F, [[0, 1]]),)))

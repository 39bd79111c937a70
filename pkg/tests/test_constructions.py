from __future__ import annotations

import itertools

import numpy as np
import pytest
from oracle import min_flag_distance, oracle_for

from flagrank import bounds
from flagrank import constructions as cons
from flagrank.classiccodes import HammingCode, mds3_feasible, mrd_spread_set
from flagrank.errors import InvalidInput
from flagrank.flagcodes import UTCode, code_report, exact_min_distance, f, optimum_distance_check
from flagrank.gf import gf
from flagrank.linalg import Mat, embed_phi, project_upper


def _params(C: UTCode):
    return C.n, C.dim, code_report(C).delta


@pytest.mark.parametrize("q,k,eps,expect", [(2, 2, 1, (4, 3, 6)), (2, 2, 0, (3, 2, 4)), (3, 2, 0, (3, 2, 4))])
def test_construction_A(q, k, eps, expect):
    C = cons.construction_A(gf(q), k, eps)
    assert _params(C) == expect
    assert exact_min_distance(C).weight == expect[2]
    assert optimum_distance_check(C)


def test_construction_A_matches_example_parameters():
    F = gf(2)
    C = cons.construction_A(F, 2, 1)
    E = cons.named_example("ex4_6", F)
    assert (C.n, C.dim) == (E.n, E.dim)
    assert code_report(C).delta == code_report(E).delta == 6


def test_example_generators_are_embedded_spread_sets():
    F = gf(2)
    for name, k in (("ex4_6", 2), ("ex4_9", 2)):
        n = cons.EXAMPLE_PARAMETERS[name][0]
        got = [project_upper(embed_phi(Mat.from_rows(F, D), 1, k, n)) for D in cons.SPREAD_GENERATORS[name]]
        assert [M.tolist() for M in got] == cons.EXAMPLE_GENERATORS[name]


@pytest.mark.parametrize("q,k,expect", [(2, 3, (5, 4, 8)), (2, 2, (3, 3, 3)), (3, 2, (3, 3, 3))])
def test_construction_B(q, k, expect):
    C = cons.construction_B(gf(q), k)
    assert _params(C) == expect
    assert exact_min_distance(C).weight == expect[2]


def test_construction_B_small_cases_match_oracle():
    for q, k in [(2, 2), (3, 2)]:
        F = gf(q)
        C = cons.construction_B(F, k)
        assert min_flag_distance(oracle_for(F), C.n, C.vectors.tolist()) == 3
    C = cons.construction_A(gf(2), 2, 1)
    assert min_flag_distance(oracle_for(gf(2)), 4, C.vectors.tolist()) == 6


def test_construction_delta2():
    C = cons.construction_delta2(gf(2), 3)
    assert (C.dim, exact_min_distance(C).weight, exact_min_distance(C).examined) == (5, 2, 31)
    C = cons.construction_delta2(gf(3), 4)
    rep = code_report(C)
    assert (rep.dim, rep.delta, rep.is_mfrd) == (9, 2, True)
    for q in (2, 3, 5):
        C = cons.construction_delta2(gf(q), 2)
        assert (C.dim, exact_min_distance(C).weight) == (2, 2)


def test_construction_delta3_example():
    F = gf(2)
    C = cons.construction_delta3(F, 4, cons.example_point_choice())
    assert C.same_space(cons.named_example("ex4_3_2", F))
    assert _params(C) == (4, 7, 3)
    assert min_flag_distance(oracle_for(F), 4, C.vectors.tolist()) == 3


@pytest.mark.parametrize("q,n", [(2, 7), (3, 13)])
def test_construction_delta3_maximal_length(q, n):
    rep = code_report(cons.construction_delta3(gf(q), n))
    assert (rep.dim, rep.delta, rep.is_mfrd) == (f(n, 3), 3, True)
    with pytest.raises(InvalidInput):
        cons.construction_delta3(gf(q), n + 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_default_point_choice_valid(q):
    F = gf(q)
    for n in range(3, q * q + q + 2):
        ch = cons.default_point_choice(F, n)
        ch.validate(F)
        assert cons.n_avoiding_check(HammingCode.from_parity_check(F, ch.parity_check(F)))


def test_point_choice_validation():
    F = gf(2)
    good = cons.example_point_choice()
    with pytest.raises(InvalidInput):
        cons.PointChoice(good.P[:2] + good.P[:1] + good.P[3:], good.Q).validate(F)
    with pytest.raises(InvalidInput):
        cons.PointChoice(good.P, (good.P[0],) + good.Q[1:]).validate(F)
    with pytest.raises(InvalidInput):
        cons.construction_delta3(F, 5, good)


def test_n_avoiding_examples():
    F = gf(2)
    H = Mat.from_rows(F, cons.HAMMING_7_4_PARITY)
    ham = HammingCode.from_parity_check(F, H)
    assert cons.n_avoiding_check(ham, H=H)
    assert cons.n_avoiding_check(ham, method="scan")
    e2 = HammingCode.from_generator(F, [[0, 1, 0, 0, 0]])
    e13 = HammingCode.from_generator(F, [[1, 0, 1, 0, 0]])
    for C in (e2, e13):
        assert not cons.n_avoiding_check(C)
        assert not cons.n_avoiding_check(C, method="scan")
    with pytest.raises(InvalidInput):
        cons.n_avoiding_check(HammingCode.from_generator(F, [[1, 1, 1, 1]]))


def test_n_sets():
    sets = cons.n_sets(3)
    assert frozenset({1, 3}) in sets and frozenset({2}) in sets and frozenset({3, 4, 5}) in sets
    assert len(sets) == 3 + 2 + 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_n_avoiding_parity_agrees_with_scan_q2(n):
    F = gf(2)
    N = 2 * n - 1
    rng = np.random.default_rng(n)
    gens = [rng.integers(0, 2, (k, N)) for k in range(1, N) for _ in range(12)]
    if n <= 3:
        gens += [np.array(rows) for k in (1, 2) for rows in itertools.combinations(itertools.product((0, 1), repeat=N), k)]
    checked = 0
    for G in gens:
        try:
            C = HammingCode.from_generator(F, np.asarray(G).tolist(), N)
        except InvalidInput:
            continue
        assert cons.n_avoiding_check(C, method="parity") == cons.n_avoiding_check(C, method="scan")
        checked += 1
    assert checked > 20


@pytest.mark.parametrize("q,n", [(2, 4), (3, 4)])
def test_construction_C_small(q, n):
    C = cons.construction_C(gf(q), n)
    assert C.dim == f(n, 4) == 6
    assert exact_min_distance(C).weight == 4


def test_construction_C_equals_example():
    F = gf(2)
    assert cons.construction_C(F, 4).same_space(cons.named_example("ex4_26", F))


def test_construction_C_gf4_n5():
    rep = code_report(cons.construction_C(gf(4), 5))
    assert (rep.dim, rep.delta, rep.is_mfrd) == (11, 4, True)


def test_construction_C_dimension_formula():
    for q, n in [(2, 4), (3, 4), (4, 6), (5, 6), (8, 10)]:
        if mds3_feasible(q, n):
            C = cons.construction_C(gf(q), n)
            assert C.dim == 2 * (n - 2) + (n - 3) + (n - 3) * (n - 2) // 2 == f(n, 4)
    with pytest.raises(InvalidInput):
        cons.construction_C(gf(2), 5)


def test_named_examples():
    assert cons.named_example("ex4_6", gf(2)).dim == 3
    assert cons.named_example("ex5_5", gf(4)).dim == 9
    for q, mfrd in ((2, True), (4, True), (3, False)):
        rep = code_report(cons.named_example("ex5_5", gf(q)))
        assert (rep.dim, rep.is_mfrd) == (9, mfrd)
    with pytest.raises(InvalidInput):
        cons.named_example("ex9_9", gf(2))


def _feasible_instances():
    for q in (2, 3, 4, 5):
        F = gf(q)
        for k in range(1, 5):
            for eps in (0, 1):
                if 2 * k - 1 + eps <= 7:
                    yield ("A", q, k, eps), (lambda F=F, k=k, eps=eps: cons.construction_A(F, k, eps)), (
                        2 * k - 1 + eps, k + eps, k * (k + eps))
        for k in range(2, 5):
            yield ("B", q, k), (lambda F=F, k=k: cons.construction_B(F, k)), (2 * k - 1, k + 1, k * k - 1)
        for n in range(2, 8):
            yield ("d2", q, n), (lambda F=F, n=n: cons.construction_delta2(F, n)), (n, f(n, 2), 2)
        for n in range(3, 8):
            yield ("d3", q, n), (lambda F=F, n=n: cons.construction_delta3(F, n)), (n, f(n, 3), 3)
        for n in range(4, 8):
            if mds3_feasible(q, n):
                yield ("C", q, n), (lambda F=F, n=n: cons.construction_C(F, n)), (n, f(n, 4), 4)


@pytest.mark.slow
def test_all_feasible_outputs_verify():
    for tag, build, (n, t, d) in _feasible_instances():
        C = build()
        rep = code_report(C)
        assert (rep.n, rep.dim, rep.delta, rep.is_mfrd) == (n, t, d, True), tag
        if d in (3, 4):
            assert bounds.existence_limits(C.field, d, n).status != bounds.NONEXISTENT, tag


def test_search_small_cases():
    F = gf(2)
    for n, delta in [(4, 3), (3, 2)]:
        res = cons.random_mfrd_search(F, n, delta, trials=200, seed=1)
        assert res.code is not None
        rep = code_report(res.code)
        assert (rep.dim, rep.delta, rep.is_mfrd) == (f(n, delta), delta, True)


def test_search_deterministic():
    F = gf(3)
    a = cons.random_mfrd_search(F, 5, 3, trials=50, seed=9)
    b = cons.random_mfrd_search(F, 5, 3, trials=50, seed=9)
    assert (a.trial, a.trials_run, a.rank_deficient) == (b.trial, b.trials_run, b.rank_deficient)
    assert a.code is not None and a.code.same_space(b.code)


def test_search_beyond_plane_fails():
    res = cons.random_mfrd_search(gf(2), 8, 3, trials=300, seed=12345)
    assert res.code is None and res.trials_run == 300


def test_invalid_inputs():
    F = gf(2)
    with pytest.raises(InvalidInput):
        cons.construction_A(F, 0, 0)
    with pytest.raises(InvalidInput):
        cons.construction_A(F, 2, 2)
    with pytest.raises(InvalidInput):
        cons.construction_B(F, 1)
    with pytest.raises(InvalidInput):
        cons.construction_delta2(F, 1)
    with pytest.raises(InvalidInput):
        cons.construction_delta3(F, 2)
    with pytest.raises(InvalidInput):
        cons.construction_C(F, 3)
    with pytest.raises(InvalidInput):
        cons.random_mfrd_search(F, 3, 4, 10, 0)
    with pytest.raises(InvalidInput):
        cons.random_mfrd_search(F, 3, 2, -1, 0)


def test_spread_set_basis_is_power_sequence():
    F = gf(3)
    S = mrd_spread_set(F, 3)
    A = S.basis[1]
    assert S.basis[0] == Mat.identity(F, 3)
    assert S.basis[2] == A @ A

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from rotabaxter import fixtures
from rotabaxter.errors import BraidFailure, FunctorialityFailure, NotBijective
from rotabaxter.rrb import RRB2GroupOp, decomposition_map, enumerate_rrb_two_group, twist_rrb
from rotabaxter.twogroup import adjoint_action
from rotabaxter.ybe import CatYBSolution, braid_failure, build_RB, verify_cat_ybe, verify_set_ybe


def conjugation_solution(G):
    t, inv = G.table, G.inverses
    n = G.order
    return np.array([j * n + t[t[inv[j], q], j] for q in range(n) for j in range(n)])


def first_bad_triple(perm, n):
    def r(a, b):
        return divmod(perm[a * n + b], n)

    for x in range(n):
        for y in range(n):
            for z in range(n):
                a, b = r(x, y)
                b, c = r(b, z)
                a, b = r(a, b)
                b2, c2 = r(y, z)
                a2, b2 = r(x, b2)
                b2, c2 = r(b2, c2)
                if (a, b, c) != (a2, b2, c2):
                    return x, y, z
    return None


def test_identity_and_flip():
    n = 4
    verify_set_ybe(np.arange(n * n))
    flip = np.array([j * n + q for q in range(n) for j in range(n)])
    verify_set_ybe(flip)
    assert oracles.braid_ok(flip.tolist(), n)


def test_conjugation_solution_on_s3():
    R = conjugation_solution(fixtures.group("S3"))
    assert oracles.braid_ok(R.tolist(), 6)
    verify_set_ybe(R, 6)


def test_non_bijective_map_is_rejected():
    with pytest.raises(NotBijective):
        verify_set_ybe(np.zeros(4, dtype=np.int64))
    with pytest.raises(NotBijective):
        verify_set_ybe(np.array([0, 1, 2, 7]))


def test_braid_failure_reports_first_triple():
    # a bijection that is not braided: swap only (0, 1) and (1, 1) on a 2-element set
    perm = np.array([0, 3, 2, 1])
    assert not oracles.braid_ok(perm.tolist(), 2)
    with pytest.raises(BraidFailure) as info:
        verify_set_ybe(perm)
    assert info.value.witness == braid_failure(perm, 2) == first_bad_triple(perm.tolist(), 2)


@given(st.permutations(range(9)))
def test_braid_check_matches_oracle(perm):
    perm = list(perm)
    assert (braid_failure(perm, 3) is None) == oracles.braid_ok(perm, 3)


def test_solution_of_constant_operator():
    P = fixtures.two_group("discrete-S3")
    op = RRB2GroupOp(adjoint_action(P), np.zeros(6, dtype=np.int64), np.zeros(6, dtype=np.int64))
    sol = build_RB(op)
    assert np.array_equal(sol.R.perm, conjugation_solution(P.arrows))
    verify_cat_ybe(sol, P)


def test_solution_of_inverse_operator():
    P = fixtures.two_group("discrete-S3")
    G = P.arrows
    op = RRB2GroupOp(adjoint_action(P), G.inverses, G.inverses)
    sol = build_RB(op)
    t, inv = G.table, G.inverses
    for q in range(6):
        for j in range(6):
            assert sol.R(q, j) == (t[t[inv[q], j], q], q)
    verify_cat_ybe(sol, P)


def test_solution_of_decomposition_operator():
    S3 = fixtures.group("S3")
    lab = list(S3.labels)
    B = decomposition_map(S3, [lab.index(s) for s in ("e", "(123)", "(132)")],
                          [lab.index(s) for s in ("e", "(12)")])
    P = fixtures.two_group("discrete-S3")
    sol = build_RB(RRB2GroupOp(adjoint_action(P), B, B))
    verify_cat_ybe(sol, P)
    assert oracles.braid_ok(sol.R.perm.tolist(), 6)


@pytest.mark.parametrize("name", ["discrete-S3", "pair-Z2", "pair-Z3", "Z2=>T"])
def test_every_operator_gives_a_solution(name):
    P = fixtures.two_group(name)
    for op in enumerate_rrb_two_group(adjoint_action(P)):
        sol = verify_cat_ybe(build_RB(op), P)
        assert sol.R(P.arrows.identity, P.arrows.identity) == (P.arrows.identity, P.arrows.identity)
        ident = np.arange(P.n), np.arange(P.n0)
        twisted = twist_rrb(op, *ident, *ident)
        assert np.array_equal(build_RB(twisted).R.perm, sol.R.perm)


def test_mismatched_components_fail_functoriality():
    P = fixtures.two_group("discrete-S3")
    ops = enumerate_rrb_two_group(adjoint_action(P))
    found = False
    for a in ops:
        for b in ops:
            sa, sb = build_RB(a), build_RB(b)
            if np.array_equal(sa.R0.perm, sb.R0.perm):
                continue
            found = True
            with pytest.raises(FunctorialityFailure):
                verify_cat_ybe(CatYBSolution(sa.R, sb.R0), P)
    assert found

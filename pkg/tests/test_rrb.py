import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from rotabaxter import fixtures
from rotabaxter.errors import (
    ComponentFailure,
    MixedIdentityFailure,
    NotAdjointAction,
    NotAutomorphism,
    NotGroupoidMorphism,
    RRBFailure,
    SquareFailure,
)
from rotabaxter.fingroup import automorphisms, conjugation_action, trivial_action
from rotabaxter.rrb import (
    RRB2GroupOp,
    RRBGroupOp,
    RRBXModOp,
    bar_B,
    decomposition_map,
    descendant_action,
    descendant_group_action,
    descendant_two_group,
    descendant_xmod,
    enumerate_rrb_group,
    enumerate_rrb_two_group,
    enumerate_rrb_xmod,
    graph_2subgroup,
    graph_failure,
    hat_B,
    hat_maps,
    plus_B,
    rb_group_to_rb_2groups,
    rb_on_descendant,
    rb_on_descendant_xmod,
    rrb_2group_to_xmod,
    rrb_failure,
    rrb_two_group_failure,
    rrb_xmod_to_2group,
    twist_rrb,
    verify_rrb_group,
    verify_rrb_two_group,
    verify_rrb_xmod,
)
from rotabaxter.twogroup import adjoint_action, trivial_two_group_action
from rotabaxter.xmod import CrossedModule, adjoint_xmod_action, trivial_xmod_action


def s3_parts():
    S3 = fixtures.group("S3")
    lab = list(S3.labels)
    X = [lab.index(s) for s in ("e", "(123)", "(132)")]
    Y = [lab.index(s) for s in ("e", "(12)")]
    return S3, X, Y


def decomposition_op():
    S3, X, Y = s3_parts()
    B = decomposition_map(S3, X, Y)
    return RRB2GroupOp(adjoint_action(fixtures.two_group("discrete-S3")), B, B)


def plain_action(act):
    return act.actor.table.tolist(), act.target.table.tolist(), act.perms.tolist()


def const_e(P):
    return (np.full(P.n, P.arrows.identity), np.full(P.n0, P.objects.identity))


def inverse(P):
    return P.arrows.inverses, P.objects.inverses


# ----------------------------------------------------------------------------
# groups

@pytest.mark.parametrize("name", fixtures.CORE_GROUPS)
def test_constant_and_inverse_are_rota_baxter(name):
    G = fixtures.group(name)
    ad = conjugation_action(G)
    verify_rrb_group(np.full(G.order, G.identity), ad)
    verify_rrb_group(G.inverses, ad)


def test_z2_operators_are_the_endomorphisms():
    Z2 = fixtures.group("Z2")
    ops = enumerate_rrb_group(conjugation_action(Z2))
    assert [op.B.tolist() for op in ops] == [[0, 0], [0, 1]]
    assert oracles.brute_rrb(*plain_action(conjugation_action(Z2))) == [(0, 0), (0, 1)]


def test_z3_trivial_action_has_three_operators():
    Z3 = fixtures.group("Z3")
    ops = enumerate_rrb_group(trivial_action(Z3, Z3))
    assert len(ops) == 3


@pytest.mark.parametrize("name", ["T", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6"])
@pytest.mark.parametrize("kind", ["adjoint", "trivial"])
def test_enumeration_equals_brute_force(name, kind):
    G = fixtures.group(name)
    act = conjugation_action(G) if kind == "adjoint" else trivial_action(G, G)
    ops = [tuple(op.B.tolist()) for op in enumerate_rrb_group(act)]
    assert ops == oracles.brute_rrb(*plain_action(act))


def test_s3_count_matches_cached_oracle():
    S3 = fixtures.group("S3")
    ops = enumerate_rrb_group(conjugation_action(S3))
    assert len(ops) == oracles.cached_counts()["N_S3"]
    for op in ops:
        assert oracles.rrb_ok(*plain_action(op.action), op.B.tolist())


def test_failure_witness_is_a_real_violation():
    S3 = fixtures.group("S3")
    ad = conjugation_action(S3)
    B = np.arange(6)
    B[3] = 0
    hit = rrb_failure(ad, B)
    h, k = hit
    t = S3.table
    assert t[B[h], B[k]] != B[t[h, ad.perms[B[h], k]]]
    with pytest.raises(RRBFailure) as info:
        verify_rrb_group(B, ad)
    assert info.value.witness == hit


def test_decomposition_map_on_s3():
    S3, X, Y = s3_parts()
    B = decomposition_map(S3, X, Y)
    for x in X:
        for y in Y:
            assert B[S3.table[x, y]] == S3.inverses[y]
    op = verify_rrb_group(B, conjugation_action(S3))
    assert oracles.isomorphic(op.descendant.table.tolist(), fixtures.group("Z6").table.tolist())


def test_descendant_group_action_is_an_action():
    S3 = fixtures.group("S3")
    for op in enumerate_rrb_group(conjugation_action(S3)):
        perms = descendant_group_action(op)
        assert sorted(perms[0].tolist()) == list(range(6))
        D = op.descendant.table.tolist()
        for a in range(6):
            for b in range(6):
                assert perms[D[a][b]].tolist() == perms[a][perms[b]].tolist()


@given(st.sampled_from(["Z4", "S3", "Z2xZ2"]), st.data())
def test_random_maps_agree_with_oracle(name, data):
    G = fixtures.group(name)
    act = conjugation_action(G)
    B = data.draw(st.lists(st.integers(0, G.order - 1), min_size=G.order, max_size=G.order))
    ok = oracles.rrb_ok(*plain_action(act), B)
    assert (rrb_failure(act, B) is None) == ok
    if ok:
        op = verify_rrb_group(B, act)
        assert op.B[G.identity] == G.identity
        # B is a homomorphism from the descendant
        D = op.descendant.table
        assert np.array_equal(op.B[D], G.table[op.B[:, None], op.B[None, :]])


# ----------------------------------------------------------------------------
# 2-groups

@pytest.mark.parametrize("name", ["discrete-S3", "Z2=>T", "pair-Z2", "pair-S3"])
def test_constant_and_inverse_two_group_operators(name):
    P = fixtures.two_group(name)
    ad = adjoint_action(P)
    verify_rrb_two_group(*const_e(P), ad)
    verify_rrb_two_group(*inverse(P), ad)


def test_decomposition_operator_is_valid():
    op = decomposition_op()
    P = op.P
    assert oracles.rrb2_ok(oracles.Plain2Group.of(P), oracles.Plain2Group.of(P),
                           P.arrows.conjugation.tolist(), P.objects.conjugation.tolist(),
                           op.B.tolist(), op.B0.tolist())


def test_component_and_groupoid_failures():
    P = fixtures.two_group("pair-Z2")
    ad = adjoint_action(P)
    B, B0 = inverse(P)
    bad = B.copy()
    bad[1] = 3
    assert isinstance(rrb_two_group_failure(ad, bad, B0), (ComponentFailure, NotGroupoidMorphism))
    # the identity map on objects with constant arrows is not a groupoid morphism
    e, _ = const_e(P)
    assert isinstance(rrb_two_group_failure(ad, e, np.arange(P.n0)), NotGroupoidMorphism)


def _small(case):
    # the double loop runs over |P|^|Q| arrow maps
    act = case.action()
    return act.actor.n ** act.target.n <= 10 ** 5


@pytest.mark.parametrize("case", [c for c in fixtures.TWO_GROUP_CASES if _small(c)], ids=lambda c: c.name)
def test_two_group_enumeration_equals_double_loop(case):
    act = case.action()
    P, Q = oracles.Plain2Group.of(act.actor), oracles.Plain2Group.of(act.target)
    brute = oracles.brute_rrb2(P, Q, act.phi.perms.tolist(), act.phi0.perms.tolist())
    ops = [op.key() for op in enumerate_rrb_two_group(act)]
    assert ops == sorted((tuple(b), tuple(b0)) for b, b0 in brute)


def test_z2_t_adjoint_operators():
    ops = enumerate_rrb_two_group(adjoint_action(fixtures.two_group("Z2=>T")))
    assert [op.key() for op in ops] == [((0, 0), (0,)), ((0, 1), (0,))]


def test_graph_of_constant_operator_is_a_copy_of_q():
    P = fixtures.two_group("pair-Z2")
    op = RRB2GroupOp(adjoint_action(P), *const_e(P))
    G = graph_2subgroup(op).two_group
    assert (G.n, G.n0) == (P.n, P.n0)
    assert np.array_equal(graph_2subgroup(op).arrows.elements % P.n, np.zeros(P.n))


def test_graph_of_decomposition_operator():
    op = decomposition_op()
    sub = graph_2subgroup(op)
    assert sub.parent.n == 36 and sub.two_group.n == 6


def test_graph_fails_for_non_operator():
    P = fixtures.two_group("discrete-S3")
    ad = adjoint_action(P)
    B = np.arange(6)
    B[3] = 0
    plain = oracles.Plain2Group.of(P)
    assert not oracles.graph_closed(plain, plain, ad.phi.perms.tolist(), ad.phi0.perms.tolist(), B.tolist(), B.tolist())
    assert graph_failure(ad, B, B) is not None


def test_hat_of_constant_and_inverse():
    P = fixtures.two_group("Z2=>T")
    ad = adjoint_action(P)
    op = RRB2GroupOp(ad, *const_e(P))
    hat = hat_B(op)
    for q in range(P.n):
        for p in range(P.n):
            assert hat.B[q * P.n + p] == P.arrows.inverses[p]
    op = RRB2GroupOp(ad, *inverse(P))
    hat = hat_B(op)
    t, inv = P.arrows.table, P.arrows.inverses
    for q in range(P.n):
        for p in range(P.n):
            assert hat.B[q * P.n + p] == t[inv[p], inv[q]]
    assert hat.B[0] == 0


def test_hat_of_non_operator_fails():
    P = fixtures.two_group("discrete-S3")
    ad = adjoint_action(P)
    B = np.arange(6)
    B[3] = 0
    hat, hat0 = hat_maps(ad, B, B)
    assert rrb_two_group_failure(ad.semidirect_adjoint, hat, hat0) is not None


def test_descendants_of_constant_and_inverse():
    P = fixtures.two_group("pair-S3")
    ad = adjoint_action(P)
    D = descendant_two_group(RRB2GroupOp(ad, *const_e(P))).two_group
    assert D == P or D.arrows == P.arrows
    D = descendant_two_group(RRB2GroupOp(ad, *inverse(P))).two_group
    assert np.array_equal(D.arrows.table, P.arrows.table.T)


def test_descendant_of_decomposition_operator():
    D = descendant_two_group(decomposition_op()).two_group
    assert oracles.isomorphic(D.arrows.table.tolist(), fixtures.group("Z6").table.tolist())
    assert oracles.is_two_group(oracles.Plain2Group.of(D))


def test_descendant_actions():
    P = fixtures.two_group("discrete-S3")
    ad = adjoint_action(P)
    act = descendant_action(RRB2GroupOp(ad, *const_e(P)))
    assert np.array_equal(act.perms, np.tile(np.arange(6), (6, 1)))
    op = RRB2GroupOp(ad, *inverse(P))
    act = descendant_action(op)
    # direct evaluation of B(phi(p) q')^-1 . p . B(q') with q' the descendant inverse
    t, inv, conj = P.arrows.table, P.arrows.inverses, P.arrows.conjugation
    D = op.descendant.two_group
    for q in range(6):
        qd = D.arrows.inverses[q]
        for p in range(6):
            expected = t[t[inv[op.B[conj[p, qd]]], p], op.B[qd]]
            assert act.perms[q, p] == expected
    assert np.array_equal(act.perms[D.arrows.identity], np.arange(6))


def test_rota_baxter_operators_stay_on_descendant():
    P = fixtures.two_group("pair-Z3")
    for op in enumerate_rrb_two_group(adjoint_action(P)):
        rb_on_descendant(op)


def test_twists():
    P = fixtures.two_group("discrete-S3")
    ad = adjoint_action(P)
    ident = np.arange(6)
    op = RRB2GroupOp(ad, *inverse(P))
    assert np.array_equal(twist_rrb(op, ident, ident, ident, ident).B, op.B)
    for f in automorphisms(P.arrows):
        assert np.array_equal(twist_rrb(op, f, f, f, f).B, op.B)
    const = RRB2GroupOp(ad, *const_e(P))
    for f in automorphisms(P.arrows):
        assert np.array_equal(twist_rrb(const, f, f, f, f).B, const.B)
    moved = automorphisms(P.arrows)[1]
    with pytest.raises(NotAutomorphism):
        twist_rrb(op, ident, ident, moved, moved)


def test_bar():
    P = fixtures.two_group("pair-S3")
    ad = adjoint_action(P)
    const = RRB2GroupOp(ad, *const_e(P))
    inv = RRB2GroupOp(ad, *inverse(P))
    assert np.array_equal(bar_B(const).B, inv.B)
    assert np.array_equal(bar_B(inv).B, const.B)
    op = decomposition_op()
    assert np.array_equal(bar_B(bar_B(op)).B, op.B)
    # on an abelian group the trivial action is the adjoint one, so use S3
    Q = fixtures.two_group("discrete-S3")
    with pytest.raises(NotAdjointAction):
        bar_B(RRB2GroupOp(trivial_two_group_action(Q, Q), *const_e(Q)))


def test_plus():
    P = fixtures.two_group("discrete-S3")
    ad = adjoint_action(P)
    assert np.array_equal(plus_B(RRB2GroupOp(ad, *const_e(P))).f.map, np.arange(6))
    assert np.array_equal(plus_B(RRB2GroupOp(ad, *inverse(P))).f.map, np.zeros(6))
    S3, X, Y = s3_parts()
    f = plus_B(decomposition_op()).f.map
    for x in X:
        for y in Y:
            assert f[S3.table[x, y]] == x


def test_rb_group_to_rb_2groups():
    Z2 = fixtures.group("Z2")
    rrb = verify_rrb_group([0, 1], conjugation_action(Z2))
    rb_group_to_rb_2groups(rrb)
    S3 = fixtures.group("S3")
    e = S3.identity
    _, tilde = rb_group_to_rb_2groups(verify_rrb_group(np.full(6, e), conjugation_action(S3)))
    assert np.array_equal(tilde.B, np.full(36, e * 6 + e))
    _, tilde = rb_group_to_rb_2groups(verify_rrb_group(S3.inverses, conjugation_action(S3)))
    t, inv = S3.table, S3.inverses
    for p in range(6):
        for l in range(6):
            assert tilde.B[p * 6 + l] == t[inv[t[p, l]], l] * 6 + inv[l]
    with pytest.raises(NotAdjointAction):
        rb_group_to_rb_2groups(verify_rrb_group(np.full(6, e), trivial_action(S3, S3)))


# ----------------------------------------------------------------------------
# crossed modules

@pytest.mark.parametrize("name", ["inclusion-S3", "inclusion-Z4", "Z2->T", "trivial-S3"])
def test_constant_and_inverse_xmod_operators(name):
    X = fixtures.crossed_module(name)
    ad = adjoint_xmod_action(X)
    verify_rrb_xmod(np.full(X.g1.order, X.g1.identity), np.full(X.g0.order, X.g0.identity), ad)
    verify_rrb_xmod(X.g1.inverses, X.g0.inverses, ad)
    A = oracles.PlainXModAction(ad)
    assert oracles.rrb_xmod_ok(A, X.g1.inverses.tolist(), X.g0.inverses.tolist())


def test_square_failure():
    X = fixtures.crossed_module("inclusion-S3")
    with pytest.raises(SquareFailure):
        verify_rrb_xmod(X.g1.inverses, np.zeros(6, dtype=np.int64), adjoint_xmod_action(X))


@pytest.mark.parametrize("case", fixtures.XMOD_CASES, ids=lambda c: c.name)
def test_xmod_enumeration_equals_double_loop(case):
    act = case.action()
    ops = [op.key() for op in enumerate_rrb_xmod(act)]
    brute = oracles.brute_rrb_xmod(oracles.PlainXModAction(act))
    assert ops == sorted((tuple(b1), tuple(b0)) for b1, b0 in brute)


def test_z2_t_inverse_operator_becomes_inverse_on_first_coordinate():
    X = fixtures.crossed_module("Z2->T")
    op = verify_rrb_xmod([0, 1], [0], adjoint_xmod_action(X))
    two = rrb_xmod_to_2group(op)
    assert two.B.tolist() == [0 * 1 + 0, 1 * 1 + 0]


def test_inverse_on_pair_s3_restricts_to_inverse():
    P = fixtures.two_group("pair-S3")
    op = RRB2GroupOp(adjoint_action(P), *inverse(P))
    x = rrb_2group_to_xmod(op)
    K = x.H.g1
    assert np.array_equal(x.B1, K.inverses) and np.array_equal(x.B0, P.objects.inverses)


@pytest.mark.parametrize("name", ["inclusion-S3", "inclusion-Z3", "Z2->T"])
def test_xmod_round_trip(name):
    X = fixtures.crossed_module(name)
    for op in enumerate_rrb_xmod(adjoint_xmod_action(X)):
        back = rrb_2group_to_xmod(rrb_xmod_to_2group(op))
        assert back.key() == op.key()


def test_xmod_descendants():
    X = fixtures.crossed_module("inclusion-S3")
    ad = adjoint_xmod_action(X)
    const = verify_rrb_xmod(np.zeros(6, dtype=np.int64), np.zeros(6, dtype=np.int64), ad)
    d = descendant_xmod(const)
    assert d.xmod == X and d.report.ok
    inv = verify_rrb_xmod(X.g1.inverses, X.g0.inverses, ad)
    d = descendant_xmod(inv)
    assert np.array_equal(d.xmod.g1.table, X.g1.table.T)
    assert np.array_equal(d.xmod.g0.table, X.g0.table.T)
    assert oracles.is_xmod(d.xmod.g1.table.tolist(), d.xmod.g0.table.tolist(), d.xmod.mu.tolist(),
                           d.xmod.act.perms.tolist())
    rb_on_descendant_xmod(inv)
    Y = fixtures.crossed_module("Z2->T")
    d = descendant_xmod(verify_rrb_xmod([0, 1], [0], adjoint_xmod_action(Y)))
    assert d.xmod == Y


def test_mixed_identity_can_fail_alone():
    # Z3 -> Z2 with trivial boundary and Z2 acting by inversion
    X = CrossedModule(fixtures.group("Z3"), fixtures.group("Z2"), [0, 0, 0], [[0, 1, 2], [0, 2, 1]])
    act = adjoint_xmod_action(X)
    A = oracles.PlainXModAction(act)
    ones = oracles.brute_rrb(A.g1, A.h1, A.beta1_mu)
    zeros = oracles.brute_rrb(A.g0, A.h0, A.beta0)
    isolated = [(B1, B0) for B1 in ones for B0 in zeros
                if all(A.mu[B1[h]] == B0[A.dH[h]] for h in range(len(A.h1))) and not oracles.rrb_xmod_ok(A, B1, B0)]
    assert isolated
    for B1, B0 in isolated:
        with pytest.raises(MixedIdentityFailure):
            RRBXModOp(act, B1, B0)
    ops = [op.key() for op in enumerate_rrb_xmod(act)]
    assert ops == sorted(oracles.brute_rrb_xmod(A))


def test_trivial_xmod_action_operators_are_component_operators():
    G, H = fixtures.crossed_module("inclusion-Z2"), fixtures.crossed_module("inclusion-Z2")
    ops = enumerate_rrb_xmod(trivial_xmod_action(G, H))
    assert all(RRBGroupOp(trivial_action(G.g0, H.g0), op.B0) for op in ops)

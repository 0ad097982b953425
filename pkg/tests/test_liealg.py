import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from rotabaxter import fixtures
from rotabaxter.errors import ComponentFailure, IdentityFailure, NotLieAlgebra, SquareFailure
from rotabaxter.liealg import (
    LieAlgebra,
    adjoint_lie_action,
    adjoint_lie_xmod_action,
    crossed_hom_lie_residual,
    heisenberg,
    identity,
    identity_lie_xmod,
    rrb_lie_residual,
    sl2,
    trivial_lie_action,
    trivial_lie_xmod_action,
    verify_crossed_hom_lie,
    verify_crossed_hom_lie_xmod,
    verify_rrb_lie,
    verify_rrb_lie_xmod,
    zeros,
)
from lie_oracle import (
    AFF_BASIS,
    GRID,
    U,
    V,
    as_rows,
    br,
    coords,
    elt,
    oracle_rrb,
    oracle_xhom,
    oracle_xmod_mixed,
    passes,
    u0,
    u1,
    v0,
    v1,
)


def test_structure_constants_match_matrix_model():
    g = fixtures.lie_algebra("aff1")
    for i, j in itertools.product(range(2), repeat=2):
        expected = coords(br(AFF_BASIS[i], AFF_BASIS[j]))
        assert list(g.bracket(g.e(i), g.e(j))) == [Fraction(int(c)) for c in expected]


def test_invalid_structure_constants():
    with pytest.raises(NotLieAlgebra):
        LieAlgebra([[[0, 0], [0, 1]], [[0, 1], [0, 0]]])
    # antisymmetric but not Jacobi: [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1], c[1][0] = [0, 0, 1], [0, 0, -1]
    c[1][2], c[2][1] = [1, 0, 0], [-1, 0, 0]
    c[0][2], c[2][0] = [1, 0, 0], [-1, 0, 0]
    with pytest.raises(NotLieAlgebra):
        LieAlgebra(c)


@pytest.mark.parametrize("g", [fixtures.lie_algebra("aff1"), fixtures.lie_algebra("abelian2"), sl2(), heisenberg()],
                         ids=lambda g: g.name)
def test_zero_and_negative_identity(g):
    ad = adjoint_lie_action(g)
    verify_rrb_lie(zeros(g.dim, g.dim), ad)
    verify_rrb_lie(identity(g.dim, -1), ad)
    verify_crossed_hom_lie(zeros(g.dim, g.dim), ad)
    X = identity_lie_xmod(g)
    A = adjoint_lie_xmod_action(X)
    verify_rrb_lie_xmod(zeros(g.dim, g.dim), zeros(g.dim, g.dim), A)
    verify_rrb_lie_xmod(identity(g.dim, -1), identity(g.dim, -1), A)


def test_aff1_diagonal_operator():
    B = sympy.Matrix([[0, 0], [0, -1]])
    g = fixtures.lie_algebra("aff1")
    assert passes(verify_rrb_lie, as_rows(B), adjoint_lie_action(g)) == oracle_rrb(B)


def test_aff1_rrb_grid_agrees_with_symbolic_oracle():
    ad = adjoint_lie_action(fixtures.lie_algebra("aff1"))
    valid = 0
    for B in GRID:
        ok = oracle_rrb(B)
        valid += ok
        assert passes(verify_rrb_lie, as_rows(B), ad) == ok
    assert 0 < valid < len(GRID)


def test_aff1_crossed_hom_grid_agrees_with_symbolic_oracle():
    ad = adjoint_lie_action(fixtures.lie_algebra("aff1"))
    for D in GRID:
        assert passes(verify_crossed_hom_lie, as_rows(D), ad) == oracle_xhom(D)


def test_aff1_xmod_grid_agrees_with_symbolic_oracle():
    A = adjoint_lie_xmod_action(identity_lie_xmod(fixtures.lie_algebra("aff1")))
    for B in GRID:
        rows = as_rows(B)
        # the boundary is the identity, so the square forces B1 = B0
        ok = oracle_rrb(B) and oracle_xmod_mixed(B)
        assert passes(verify_rrb_lie_xmod, rows, rows, A) == ok


def test_identity_is_not_a_crossed_hom_for_aff1_adjoint():
    assert not oracle_xhom(sympy.eye(2))
    with pytest.raises(IdentityFailure):
        verify_crossed_hom_lie(identity(2), adjoint_lie_action(fixtures.lie_algebra("aff1")))


def test_trivial_action_crossed_homs_are_homomorphisms():
    g = fixtures.lie_algebra("abelian2")
    verify_crossed_hom_lie(identity(2), trivial_lie_action(g, g))
    a = fixtures.lie_algebra("aff1")
    # on aff(1) the identity is a homomorphism, the swap is not
    verify_crossed_hom_lie(identity(2), trivial_lie_action(a, a))
    with pytest.raises(IdentityFailure):
        verify_crossed_hom_lie([[0, 1], [1, 0]], trivial_lie_action(a, a))


def test_xmod_square_and_component_failures():
    A = adjoint_lie_xmod_action(identity_lie_xmod(fixtures.lie_algebra("aff1")))
    with pytest.raises(SquareFailure):
        verify_rrb_lie_xmod(identity(2, -1), zeros(2, 2), A)
    with pytest.raises(ComponentFailure):
        verify_rrb_lie_xmod(identity(2), identity(2), A)
    verify_crossed_hom_lie_xmod(zeros(2, 2), zeros(2, 2), A)


def test_trivial_xmod_action():
    X = identity_lie_xmod(fixtures.lie_algebra("abelian2"))
    A = trivial_lie_xmod_action(X, X)
    verify_rrb_lie_xmod(identity(2), identity(2), A)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
pairs = st.tuples(st.tuples(rationals, rationals), st.tuples(rationals, rationals))


@given(st.sampled_from(range(len(GRID))), pairs)
def test_basis_verdict_matches_random_vectors(k, uv):
    # a basis-valid operator has zero residual at every rational point
    ad = adjoint_lie_action(fixtures.lie_algebra("aff1"))
    B = as_rows(GRID[k])
    Bm = tuple(tuple(Fraction(x) for x in r) for r in B)
    u, v = uv
    if passes(verify_rrb_lie, B, ad):
        assert not any(rrb_lie_residual(Bm, ad, u, v))
    if passes(verify_crossed_hom_lie, B, ad):
        assert not any(crossed_hom_lie_residual(Bm, ad, u, v))
    # the residual agrees with the symbolic oracle at this point
    subs = {u0: u[0], u1: u[1], v0: v[0], v1: v[1]}
    Bs = GRID[k]
    lhs = br(elt(Bs * U), elt(Bs * V)) - elt(Bs * coords(br(elt(Bs * U), elt(V)) - br(elt(Bs * V), elt(U))
                                                         + br(elt(U), elt(V))))
    expected = [sympy.Rational(lhs.subs(subs)[0, 0]), sympy.Rational(lhs.subs(subs)[0, 1])]
    got = rrb_lie_residual(Bm, ad, u, v)
    assert [sympy.Rational(x.numerator, x.denominator) for x in got] == expected

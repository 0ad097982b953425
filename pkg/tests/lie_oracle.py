"""Symbolic model of aff(1) as 2x2 matrices, used as an independent oracle."""

import itertools

import sympy

from rotabaxter.errors import ComponentFailure, IdentityFailure, SquareFailure

# aff(1) as 2x2 matrices: e0 = E11, e1 = E12, so [e0, e1] = e1
AFF_BASIS = [sympy.Matrix([[1, 0], [0, 0]]), sympy.Matrix([[0, 1], [0, 0]])]
u0, u1, v0, v1 = sympy.symbols("u0 u1 v0 v1")
U = sympy.Matrix([u0, u1])
V = sympy.Matrix([v0, v1])
GRID = [sympy.Matrix(2, 2, list(e)) for e in itertools.product((-1, 0, 1), repeat=4)]


def elt(c):
    return c[0] * AFF_BASIS[0] + c[1] * AFF_BASIS[1]


def br(a, b):
    return a * b - b * a


def coords(m):
    # read coordinates back from the matrix representation
    return sympy.Matrix([m[0, 0], m[0, 1]])


def oracle_rrb(B):
    """[Bu, Bv] = B([Bu, v] - [Bv, u] + [u, v]) with u, v symbolic."""
    Bu, Bv = elt(B * U), elt(B * V)
    u, v = elt(U), elt(V)
    lhs = br(Bu, Bv)
    rhs = elt(B * coords(br(Bu, v) - br(Bv, u) + br(u, v)))
    return sympy.expand(lhs - rhs) == sympy.zeros(2, 2)


def oracle_xhom(D):
    """D[x, y] = [x, Dy] - [y, Dx] + [Dx, Dy]."""
    x, y = elt(U), elt(V)
    Dx, Dy = elt(D * U), elt(D * V)
    lhs = elt(D * coords(br(x, y)))
    rhs = br(x, Dy) - br(y, Dx) + br(Dx, Dy)
    return sympy.expand(lhs - rhs) == sympy.zeros(2, 2)


def oracle_xmod_mixed(B):
    """The mixed identity on the identity crossed module with its adjoint action."""
    u, a = elt(U), elt(V)
    B0u, B1a = elt(B * U), elt(B * V)
    lhs = br(B0u, B1a)
    rhs = elt(B * coords(br(B0u, a) + br(u, B1a) + br(u, a)))
    return sympy.expand(lhs - rhs) == sympy.zeros(2, 2)


def as_rows(m):
    return [[int(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def passes(fn, *args):
    try:
        fn(*args)
    except (IdentityFailure, ComponentFailure, SquareFailure):
        return False
    return True

"""Finite-dimensional Lie algebras over the rationals, by structure constants.

Vectors are tuples of :class:`fractions.Fraction`; a linear map ``V -> W``
is a ``dim W x dim V`` matrix stored as a tuple of rows.  Every identity here
is bilinear, so checking it on pairs of basis vectors is enough; the
``*_residual`` helpers evaluate the same identities on arbitrary vectors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Sequence

from .errors import (
    ComponentFailure,
    IdentityFailure,
    MixedFailure,
    NotHom,
    NotLieAlgebra,
    SquareFailure,
)

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def vec(values) -> Vector:
    return tuple(Fraction(v) for v in values)


def mat(rows) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def identity(n: int, scale=1) -> Matrix:
    return tuple(tuple(Fraction(scale) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def basis(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def apply(m: Matrix, u: Vector) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, u)), Fraction(0)) for row in m)


def compose(a: Matrix, b: Matrix) -> Matrix:
    """``a o b``."""
    cols = list(zip(*b)) if b and b[0] else []
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(add(r, s) for r, s in zip(a, b))


def column(m: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in m)


def combine(mats: Sequence[Matrix], u: Vector, shape: tuple[int, int]) -> Matrix:
    """``sum_i u_i mats[i]``, the value of a linear map into matrices."""
    out = zeros(*shape)
    for c, m in zip(u, mats):
        if c:
            out = mat_add(out, tuple(scale(c, r) for r in m))
    return out


# ----------------------------------------------------------------------------
# Lie algebras

class LieAlgebra:
    """Structure constants ``c[i][j][k]`` with ``[e_i, e_j] = sum_k c[i][j][k] e_k``."""

    def __init__(self, structure, name: str = ""):
        c = tuple(tuple(vec(row) for row in plane) for plane in structure)
        n = len(c)
        if any(len(plane) != n or any(len(row) != n for row in plane) for plane in c):
            raise NotLieAlgebra("structure constants must form a dim^3 array")
        self.dim = n
        self.structure = c
        self.name = name
        for i, j in product(range(n), repeat=2):
            if c[i][j] != scale(-1, c[j][i]):
                raise NotLieAlgebra("bracket is not antisymmetric", (i, j))
        for i, j, k in product(range(n), repeat=3):
            e = [basis(n, t) for t in (i, j, k)]
            total = add(add(self.bracket(e[0], self.bracket(e[1], e[2])),
                            self.bracket(e[1], self.bracket(e[2], e[0]))),
                        self.bracket(e[2], self.bracket(e[0], e[1])))
            if any(total):
                raise NotLieAlgebra("Jacobi identity fails", (i, j, k))

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or self.dim})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.structure == other.structure

    def __hash__(self) -> int:
        return hash(self.structure)

    def bracket(self, u: Vector, v: Vector) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    for k, c in enumerate(self.structure[i][j]):
                        out[k] += a * b * c
        return tuple(out)

    def e(self, i: int) -> Vector:
        return basis(self.dim, i)

    @cached_property
    def ad(self) -> tuple[Matrix, ...]:
        """``ad(e_i)`` as matrices."""
        n = self.dim
        return tuple(tuple(zip(*(self.bracket(self.e(i), self.e(j)) for j in range(n))))
                     for i in range(n))


def abelian_lie(n: int) -> LieAlgebra:
    return LieAlgebra([[[0] * n for _ in range(n)] for _ in range(n)], f"abelian{n}")


def affine_lie() -> LieAlgebra:
    """``aff(1)``: ``[e0, e1] = e1``."""
    return LieAlgebra([[[0, 0], [0, 1]], [[0, -1], [0, 0]]], "aff1")


def sl2() -> LieAlgebra:
    """Basis ``h, e, f`` with ``[h,e] = 2e``, ``[h,f] = -2f``, ``[e,f] = h``."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1] = [0, 2, 0]
    c[1][0] = [0, -2, 0]
    c[0][2] = [0, 0, -2]
    c[2][0] = [0, 0, 2]
    c[1][2] = [1, 0, 0]
    c[2][1] = [-1, 0, 0]
    return LieAlgebra(c, "sl2")


def heisenberg() -> LieAlgebra:
    """Basis ``x, y, z`` with ``[x, y] = z``."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1] = [0, 0, 1]
    c[1][0] = [0, 0, -1]
    return LieAlgebra(c, "heisenberg")


def is_lie_hom(src: LieAlgebra, dst: LieAlgebra, m: Matrix) -> tuple[int, int] | None:
    for i, j in product(range(src.dim), repeat=2):
        lhs = apply(m, src.bracket(src.e(i), src.e(j)))
        rhs = dst.bracket(column(m, i), column(m, j))
        if lhs != rhs:
            return i, j
    return None


def derivation_failure(h: LieAlgebra, d: Matrix) -> tuple[int, int] | None:
    """First basis pair with ``d[u,v] != [du, v] + [u, dv]``."""
    for i, j in product(range(h.dim), repeat=2):
        u, v = h.e(i), h.e(j)
        if apply(d, h.bracket(u, v)) != add(h.bracket(apply(d, u), v), h.bracket(u, apply(d, v))):
            return i, j
    return None


class LieAction:
    """Action of ``g`` on ``h`` by derivations; ``mats[i]`` is the image of ``e_i``."""

    def __init__(self, g: LieAlgebra, h: LieAlgebra, mats):
        mats = tuple(mat(m) for m in mats)
        if len(mats) != g.dim or any(len(m) != h.dim or any(len(r) != h.dim for r in m) for m in mats):
            raise NotHom("action", message="action matrices have the wrong shape")
        for i, m in enumerate(mats):
            hit = derivation_failure(h, m)
            if hit is not None:
                raise IdentityFailure("action is not by derivations", (i,) + hit)
        self.g, self.h, self.mats = g, h, mats
        for i, j in product(range(g.dim), repeat=2):
            lhs = self.of(g.bracket(g.e(i), g.e(j)))
            rhs = mat_sub(compose(mats[i], mats[j]), compose(mats[j], mats[i]))
            if lhs != rhs:
                raise NotHom("action", (i, j))

    def of(self, x: Vector) -> Matrix:
        return combine(self.mats, x, (self.h.dim, self.h.dim))

    def __call__(self, x: Vector, u: Vector) -> Vector:
        return apply(self.of(x), u)

    def pullback(self, m: Matrix, src: LieAlgebra) -> "LieAction":
        """``x -> self(m x)`` for a Lie homomorphism ``m: src -> g``."""
        return LieAction(src, self.h, [self.of(column(m, i)) for i in range(src.dim)])


def adjoint_lie_action(g: LieAlgebra) -> LieAction:
    return LieAction(g, g, g.ad)


def trivial_lie_action(g: LieAlgebra, h: LieAlgebra) -> LieAction:
    return LieAction(g, h, [zeros(h.dim, h.dim)] * g.dim)


# ----------------------------------------------------------------------------
# relative Rota-Baxter operators and crossed homomorphisms

def _check_shape(m: Matrix, rows: int, cols: int, name: str) -> Matrix:
    m = mat(m)
    if len(m) != rows or any(len(r) != cols for r in m):
        raise IdentityFailure(f"{name} must be a {rows}x{cols} matrix")
    return m


def rrb_lie_residual(B: Matrix, action: LieAction, u: Vector, v: Vector) -> Vector:
    """``[Bu, Bv] - B(phi(Bu)v - phi(Bv)u + [u, v])``."""
    g, h = action.g, action.h
    Bu, Bv = apply(B, u), apply(B, v)
    inner = add(sub(action(Bu, v), action(Bv, u)), h.bracket(u, v))
    return sub(g.bracket(Bu, Bv), apply(B, inner))


class RRBLieOp:
    def __init__(self, action: LieAction, B):
        B = _check_shape(B, action.g.dim, action.h.dim, "B")
        h = action.h
        for i, j in product(range(h.dim), repeat=2):
            if any(rrb_lie_residual(B, action, h.e(i), h.e(j))):
                raise IdentityFailure("[Bu,Bv] != B(phi(Bu)v - phi(Bv)u + [u,v])", (i, j))
        self.action, self.B = action, B


def verify_rrb_lie(B, action: LieAction) -> RRBLieOp:
    return RRBLieOp(action, B)


def crossed_hom_lie_residual(D: Matrix, action: LieAction, x: Vector, y: Vector) -> Vector:
    """``D[x,y] - (phi(x)Dy - phi(y)Dx + [Dx, Dy])``."""
    g, h = action.g, action.h
    Dx, Dy = apply(D, x), apply(D, y)
    rhs = add(sub(action(x, Dy), action(y, Dx)), h.bracket(Dx, Dy))
    return sub(apply(D, g.bracket(x, y)), rhs)


class CrossedHomLie:
    def __init__(self, action: LieAction, D):
        D = _check_shape(D, action.h.dim, action.g.dim, "D")
        g = action.g
        for i, j in product(range(g.dim), repeat=2):
            if any(crossed_hom_lie_residual(D, action, g.e(i), g.e(j))):
                raise IdentityFailure("D[x,y] != phi(x)Dy - phi(y)Dx + [Dx,Dy]", (i, j))
        self.action, self.D = action, D


def verify_crossed_hom_lie(D, action: LieAction) -> CrossedHomLie:
    return CrossedHomLie(action, D)


# ----------------------------------------------------------------------------
# crossed modules

class LieXMod:
    """``dbar: h1 -> h0`` with ``h0`` acting on ``h1`` by derivations."""

    def __init__(self, h1: LieAlgebra, h0: LieAlgebra, dbar, act):
        dbar = _check_shape(dbar, h0.dim, h1.dim, "dbar")
        hit = is_lie_hom(h1, h0, dbar)
        if hit is not None:
            raise NotHom("dbar", hit)
        if not isinstance(act, LieAction):
            act = LieAction(h0, h1, act)
        for i, j in product(range(h1.dim), repeat=2):
            a, b = h1.e(i), h1.e(j)
            if act(apply(dbar, a), b) != h1.bracket(a, b):
                raise IdentityFailure("dbar(a) . b != [a, b]", (i, j))
        for i, j in product(range(h0.dim), range(h1.dim)):
            u, a = h0.e(i), h1.e(j)
            if apply(dbar, act(u, a)) != h0.bracket(u, apply(dbar, a)):
                raise IdentityFailure("dbar(u . a) != [u, dbar a]", (i, j))
        self.h1, self.h0, self.dbar, self.act = h1, h0, dbar, act

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieXMod) and self.h1 == other.h1 and self.h0 == other.h0
                and self.dbar == other.dbar and self.act.mats == other.act.mats)

    def __hash__(self) -> int:
        return hash((self.h1, self.h0, self.dbar))


def identity_lie_xmod(g: LieAlgebra) -> LieXMod:
    return LieXMod(g, g, identity(g.dim), adjoint_lie_action(g))


class LieXModAction:
    """A morphism ``(alpha, beta)`` into the actor ``Der(h0, h1) -> Der(h1, h0, dbar)``.

    ``alpha[i]`` is a ``dim h1 x dim h0`` matrix, the derivation assigned to
    the basis vector ``e_i`` of ``g1``.  In the actor, derivations
    ``d: h0 -> h1`` satisfy ``d[u,v] = u.d(v) - v.d(u)`` and are bracketed by
    ``d1 dbar d2 - d2 dbar d1``; ``Delta(d) = (d dbar, dbar d)``; a pair
    ``(t1, t0)`` acts on ``d`` by ``t1 d - d t0``.
    """

    def __init__(self, G: LieXMod, H: LieXMod, alpha, beta1, beta0):
        alpha = tuple(_check_shape(a, H.h1.dim, H.h0.dim, "alpha") for a in alpha)
        if len(alpha) != G.h1.dim:
            raise NotHom("alpha", message="alpha needs one matrix per basis vector of g1")
        b1 = beta1 if isinstance(beta1, LieAction) else LieAction(G.h0, H.h1, beta1)
        b0 = beta0 if isinstance(beta0, LieAction) else LieAction(G.h0, H.h0, beta0)
        d = H.dbar
        for x in range(G.h0.dim):
            t1, t0 = b1.mats[x], b0.mats[x]
            if compose(d, t1) != compose(t0, d):
                raise SquareFailure("dbar beta1(x) != beta0(x) dbar", (x,))
            for i, j in product(range(H.h0.dim), range(H.h1.dim)):
                u, a = H.h0.e(i), H.h1.e(j)
                lhs = apply(t1, H.act(u, a))
                rhs = add(H.act(apply(t0, u), a), H.act(u, apply(t1, a)))
                if lhs != rhs:
                    raise IdentityFailure("beta(x) is not a derivation of the crossed module", (x, i, j))
        for k, a in enumerate(alpha):
            for i, j in product(range(H.h0.dim), repeat=2):
                u, v = H.h0.e(i), H.h0.e(j)
                lhs = apply(a, H.h0.bracket(u, v))
                rhs = sub(H.act(u, apply(a, v)), H.act(v, apply(a, u)))
                if lhs != rhs:
                    raise IdentityFailure("alpha(xi) is not a derivation h0 -> h1", (k, i, j))
        self.G, self.H = G, H
        self.alpha, self.beta1, self.beta0 = alpha, b1, b0
        g1 = G.h1
        for i, j in product(range(g1.dim), repeat=2):
            lhs = self.alpha_of(g1.bracket(g1.e(i), g1.e(j)))
            rhs = mat_sub(compose(alpha[i], compose(d, alpha[j])), compose(alpha[j], compose(d, alpha[i])))
            if lhs != rhs:
                raise NotHom("alpha", (i, j))
        for i in range(g1.dim):
            m = column(G.dbar, i)
            if compose(alpha[i], d) != b1.of(m) or compose(d, alpha[i]) != b0.of(m):
                raise SquareFailure("Delta(alpha(xi)) != beta(mu xi)", (i,))
        for x, i in product(range(G.h0.dim), range(g1.dim)):
            lhs = self.alpha_of(G.act(G.h0.e(x), g1.e(i)))
            rhs = mat_sub(compose(b1.mats[x], alpha[i]), compose(alpha[i], b0.mats[x]))
            if lhs != rhs:
                raise IdentityFailure("alpha(x . xi) != beta1(x) alpha(xi) - alpha(xi) beta0(x)", (x, i))

    def alpha_of(self, xi: Vector) -> Matrix:
        return combine(self.alpha, xi, (self.H.h1.dim, self.H.h0.dim))

    @cached_property
    def beta1_mu(self) -> LieAction:
        return self.beta1.pullback(self.G.dbar, self.G.h1)


def adjoint_lie_xmod_action(X: LieXMod) -> LieXModAction:
    """``alpha(a)u = -u . a``, ``beta1 = act``, ``beta0 = ad``."""
    alpha = []
    for k in range(X.h1.dim):
        a = X.h1.e(k)
        cols = [scale(-1, X.act(X.h0.e(i), a)) for i in range(X.h0.dim)]
        alpha.append(tuple(zip(*cols)) if cols else zeros(X.h1.dim, 0))
    return LieXModAction(X, X, alpha, X.act, adjoint_lie_action(X.h0))


def trivial_lie_xmod_action(G: LieXMod, H: LieXMod) -> LieXModAction:
    return LieXModAction(G, H, [zeros(H.h1.dim, H.h0.dim)] * G.h1.dim,
                         trivial_lie_action(G.h0, H.h1), trivial_lie_action(G.h0, H.h0))


def mixed_lie_residual(action: LieXModAction, B1: Matrix, B0: Matrix, u: Vector, a: Vector) -> Vector:
    """``B0u . B1a - B1(beta1(B0u)a - alpha(B1a)u + u . a)``."""
    G, H = action.G, action.H
    B0u, B1a = apply(B0, u), apply(B1, a)
    inner = add(sub(action.beta1(B0u, a), apply(action.alpha_of(B1a), u)), H.act(u, a))
    return sub(G.act(B0u, B1a), apply(B1, inner))


class RRBLieXModOp:
    def __init__(self, action: LieXModAction, B1, B0):
        G, H = action.G, action.H
        B1 = _check_shape(B1, G.h1.dim, H.h1.dim, "B1")
        B0 = _check_shape(B0, G.h0.dim, H.h0.dim, "B0")
        if compose(G.dbar, B1) != compose(B0, H.dbar):
            raise SquareFailure("mu B1 != B0 dbar")
        for name, act, m in (("B1", action.beta1_mu, B1), ("B0", action.beta0, B0)):
            try:
                RRBLieOp(act, m)
            except IdentityFailure as exc:
                raise ComponentFailure(name, exc) from exc
        for i, j in product(range(H.h0.dim), range(H.h1.dim)):
            if any(mixed_lie_residual(action, B1, B0, H.h0.e(i), H.h1.e(j))):
                raise MixedFailure("B0u . B1a != B1(beta1(B0u)a - alpha(B1a)u + u . a)", (i, j))
        self.action, self.B1, self.B0 = action, B1, B0


def verify_rrb_lie_xmod(B1, B0, action: LieXModAction) -> RRBLieXModOp:
    return RRBLieXModOp(action, B1, B0)


def mixed_xhom_lie_residual(action: LieXModAction, D1: Matrix, D0: Matrix, x: Vector, xi: Vector) -> Vector:
    """``D1(x . xi) - (beta1(x)D1 xi - alpha(xi)D0 x + D0 x . D1 xi)``."""
    G, H = action.G, action.H
    D0x, D1xi = apply(D0, x), apply(D1, xi)
    rhs = add(sub(action.beta1(x, D1xi), apply(action.alpha_of(xi), D0x)), H.act(D0x, D1xi))
    return sub(apply(D1, G.act(x, xi)), rhs)


class CrossedHomLieXMod:
    def __init__(self, action: LieXModAction, D1, D0):
        G, H = action.G, action.H
        D1 = _check_shape(D1, H.h1.dim, G.h1.dim, "D1")
        D0 = _check_shape(D0, H.h0.dim, G.h0.dim, "D0")
        if compose(H.dbar, D1) != compose(D0, G.dbar):
            raise SquareFailure("dbar D1 != D0 mu")
        for name, act, m in (("D1", action.beta1_mu, D1), ("D0", action.beta0, D0)):
            try:
                CrossedHomLie(act, m)
            except IdentityFailure as exc:
                raise ComponentFailure(name, exc) from exc
        for i, j in product(range(G.h0.dim), range(G.h1.dim)):
            if any(mixed_xhom_lie_residual(action, D1, D0, G.h0.e(i), G.h1.e(j))):
                raise MixedFailure("D1(x . xi) != beta1(x)D1xi - alpha(xi)D0x + D0x . D1xi", (i, j))
        self.action, self.D1, self.D0 = action, D1, D0


def verify_crossed_hom_lie_xmod(D1, D0, action: LieXModAction) -> CrossedHomLieXMod:
    return CrossedHomLieXMod(action, D1, D0)

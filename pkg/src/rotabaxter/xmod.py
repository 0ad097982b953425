"""Crossed modules, their correspondence with 2-groups, and their actions.

A crossed module ``mu: G1 -> G0`` comes with an action of ``G0`` on ``G1``
satisfying the two Peiffer identities.  Actions of one crossed module on
another are morphisms into the actor ``D(H0, H1) -> Aut(H1, H0, d)``; they
are validated directly against that definition, so the actor is only built
when asked for.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    EquivarianceFailure,
    InvariantViolation,
    NotAutomorphism,
    NotDerivation,
    NotHom,
    Peiffer1Failure,
    Peiffer2Failure,
    SquareFailure,
)
from .fingroup import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    automorphisms,
    conjugation_action,
    first_index,
    frozen,
    semidirect_product,
    trivial_action,
    trivial_group,
)
from .search import DEFAULT_BUDGET, enumerate_cocycles
from .twogroup import TwoGroup, TwoGroupAction, TwoGroupMorphism


class CrossedModule:
    """A validated crossed module ``mu: g1 -> g0`` with ``g0`` acting on ``g1``."""

    def __init__(self, g1: FiniteGroup, g0: FiniteGroup, mu, act):
        mu = mu.map if isinstance(mu, GroupHom) else mu
        m = GroupHom(g1, g0, mu, "mu").map
        if not isinstance(act, GroupAction):
            act = GroupAction(g0, g1, act)
        if act.actor != g0 or act.target != g1:
            raise NotHom("act", message="action does not match the crossed module")
        a = act.perms
        hit = first_index(a[m] != g1.conjugation)
        if hit is not None:
            raise Peiffer1Failure("mu(g1) acts as conjugation by g1 fails", hit)
        hit = first_index(m[a] != g0.conjugation[:, m])
        if hit is not None:
            raise Peiffer2Failure("mu(g0 . g1) = g0 mu(g1) g0^-1 fails", hit)
        self.g1, self.g0 = g1, g0
        self.mu = m
        self.act = act

    def __repr__(self) -> str:
        return f"CrossedModule({self.g1.order} -> {self.g0.order})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, CrossedModule) and self.g1 == other.g1 and self.g0 == other.g0
                and np.array_equal(self.mu, other.mu) and self.act == other.act)

    def __hash__(self) -> int:
        return hash((self.g1, self.g0, self.mu.tobytes()))

    @cached_property
    def two_group(self) -> TwoGroup:
        return xmod_to_two_group(self)


# ----------------------------------------------------------------------------
# constructions

def inclusion_xmod(G: FiniteGroup) -> CrossedModule:
    """``G -> G`` by the identity, with conjugation."""
    return CrossedModule(G, G, np.arange(G.order), conjugation_action(G))


def trivial_xmod(G: FiniteGroup) -> CrossedModule:
    """``1 -> G``."""
    T = trivial_group()
    return CrossedModule(T, G, [G.identity], np.zeros((G.order, 1), dtype=np.int64))


def abelian_xmod(A: FiniteGroup) -> CrossedModule:
    """``A -> 1`` for abelian ``A``."""
    T = trivial_group()
    return CrossedModule(A, T, np.zeros(A.order, dtype=np.int64), [np.arange(A.order)])


# ----------------------------------------------------------------------------
# correspondence with 2-groups

def xmod_to_two_group(X: CrossedModule) -> TwoGroup:
    """``G1 x| G0 ⇉ G0``; the pair ``(g1, g0)`` sits at ``g1*|G0| + g0``.

    Source is ``g0`` and target is ``mu(g1) g0``.
    """
    arrows = semidirect_product(X.g1, X.g0, X.act)
    a = np.arange(arrows.order)
    g1, g0 = a // X.g0.order, a % X.g0.order
    unit = X.g1.identity * X.g0.order + np.arange(X.g0.order)
    return TwoGroup(arrows, X.g0, g0, X.g0.table[X.mu[g1], g0], unit)


def two_group_to_xmod(P: TwoGroup) -> CrossedModule:
    """``tgt: ker src -> objects`` with ``x . k = unit(x) k unit(x)^-1``.

    Index ``k`` of the kernel group is the arrow ``P.kernel_src.elements[k]``.
    """
    K = P.kernel_src
    pos = np.full(P.n, -1, dtype=np.int64)
    pos[K.elements] = np.arange(K.elements.size)
    act = pos[P.arrows.conjugation[P.unit][:, K.elements]]
    return CrossedModule(K.group, P.objects, P.tgt[K.elements], act)


def pi_map(P: TwoGroup) -> tuple[np.ndarray, np.ndarray]:
    """``(k, x) -> k . unit(x)`` from the round-tripped 2-group back onto ``P``."""
    K = P.kernel_src.elements
    a = np.arange(K.size * P.n0)
    return frozen(P.arrows.table[K[a // P.n0], P.unit[a % P.n0]]), frozen(np.arange(P.n0))


def pi_isomorphism(P: TwoGroup) -> TwoGroupMorphism:
    f, f0 = pi_map(P)
    return TwoGroupMorphism(P.crossed_module.two_group, P, f, f0, "pi").require_isomorphism()


class XModMorphism:
    def __init__(self, dom: CrossedModule, cod: CrossedModule, f1, f0, name: str = "f"):
        f1 = GroupHom(dom.g1, cod.g1, f1, name + "1").map
        f0 = GroupHom(dom.g0, cod.g0, f0, name + "0").map
        hit = first_index(cod.mu[f1] != f0[dom.mu])
        if hit is not None:
            raise SquareFailure("mu o f1 = f0 o mu fails", hit)
        hit = first_index(f1[dom.act.perms] != cod.act.perms[f0][:, f1])
        if hit is not None:
            raise EquivarianceFailure("f1(g0 . g1) = f0(g0) . f1(g1) fails", hit)
        self.dom, self.cod, self.f1, self.f0 = dom, cod, f1, f0


# ----------------------------------------------------------------------------
# derivations and the actor

def derivation_failure(H: CrossedModule, gamma) -> tuple | None:
    """First ``(x, y)`` with ``gamma(xy) != gamma(x) . x.gamma(y)``."""
    g = np.asarray(gamma)
    t0, t1, a = H.g0.table, H.g1.table, H.act.perms
    return first_index(g[t0] != t1[g[:, None], a[:, g]])


def derivations(H: CrossedModule, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All derivations ``H0 -> H1``, sorted lexicographically."""
    return enumerate_cocycles(H.act, budget=budget)


def star(mu: np.ndarray, g0: FiniteGroup, g1: FiniteGroup, left, right) -> np.ndarray:
    """``(left * right)(x) = left(mu(right(x)) x) . right(x)`` for maps ``g0 -> g1``."""
    left, right = np.asarray(left), np.asarray(right)
    return g1.table[left[g0.table[mu[right], np.arange(g0.order)]], right]


def star_identity(g0: FiniteGroup, g1: FiniteGroup) -> np.ndarray:
    return np.full(g0.order, g1.identity, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class DerivationMonoid:
    elements: list[tuple[int, ...]]
    table: np.ndarray
    identity: int
    units: list[int]
    unit_group: FiniteGroup


def derivation_monoid(H: CrossedModule) -> DerivationMonoid:
    ders = derivations(H)
    index = {d: k for k, d in enumerate(ders)}
    table = np.array([[index[tuple(star(H.mu, H.g0, H.g1, a, b).tolist())] for b in ders]
                      for a in ders], dtype=np.int64)
    ident = index[tuple(star_identity(H.g0, H.g1).tolist())]
    units = [k for k in range(len(ders))
             if any(table[k, j] == ident and table[j, k] == ident for j in range(len(ders)))]
    pos = {u: i for i, u in enumerate(units)}
    ug = FiniteGroup([[pos[int(table[a, b])] for b in units] for a in units])
    return DerivationMonoid(ders, frozen(table), ident, units, ug)


def xmod_automorphisms(H: CrossedModule) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs ``(eps, rho)`` with ``d eps = rho d`` and ``eps(x.h) = rho(x).eps(h)``."""
    found = []
    for eps in automorphisms(H.g1):
        for rho in automorphisms(H.g0):
            if np.array_equal(H.mu[eps], rho[H.mu]) and \
                    np.array_equal(eps[H.act.perms], H.act.perms[rho][:, eps]):
                found.append((eps, rho))
    return found


@dataclass(frozen=True, eq=False)
class Actor:
    xmod: CrossedModule
    derivations: list[np.ndarray]
    automorphisms: list[tuple[np.ndarray, np.ndarray]]


def delta(H: CrossedModule, gamma) -> tuple[np.ndarray, np.ndarray]:
    """``(h1 -> gamma(d h1) h1, h0 -> d gamma(h0) h0)``."""
    g = np.asarray(gamma)
    return (H.g1.table[g[H.mu], np.arange(H.g1.order)],
            H.g0.table[H.mu[g], np.arange(H.g0.order)])


def actor_xmod(H: CrossedModule) -> Actor:
    """The actor crossed module ``D(H0, H1) -> Aut(H1, H0, d)``."""
    mono = derivation_monoid(H)
    ders = [np.array(mono.elements[u], dtype=np.int64) for u in mono.units]
    der_index = {d.tobytes(): k for k, d in enumerate(ders)}
    auts = xmod_automorphisms(H)
    aut_index = {e.tobytes() + r.tobytes(): k for k, (e, r) in enumerate(auts)}
    aut_table = [[aut_index[e1[e2].tobytes() + r1[r2].tobytes()] for e2, r2 in auts]
                 for e1, r1 in auts]
    aut_group = FiniteGroup(aut_table)
    try:
        dmap = [aut_index[b"".join(x.tobytes() for x in delta(H, d))] for d in ders]
        act = [[der_index[e[d[np.argsort(r)]].tobytes()] for d in ders] for e, r in auts]
    except KeyError as exc:
        raise InvariantViolation("actor maps leave their codomain") from exc
    X = CrossedModule(mono.unit_group, aut_group, dmap, act)
    return Actor(X, ders, auts)


# ----------------------------------------------------------------------------
# actions of crossed modules on crossed modules

class XModAction:
    """Action ``(alpha, beta)`` of ``G`` on ``H``.

    ``alpha[g1]`` is a derivation ``H0 -> H1``; ``beta1[g0]`` and
    ``beta0[g0]`` are automorphisms of ``H1`` and ``H0``.
    """

    def __init__(self, G: CrossedModule, H: CrossedModule, alpha, beta1, beta0):
        al = np.asarray(alpha)
        if al.shape != (G.g1.order, H.g0.order) or al.dtype.kind not in "iu" \
                or ((al < 0) | (al >= H.g1.order)).any():
            raise NotHom("alpha", message="alpha must map G1 into maps H0 -> H1")
        b1 = beta1 if isinstance(beta1, GroupAction) else GroupAction(G.g0, H.g1, beta1)
        b0 = beta0 if isinstance(beta0, GroupAction) else GroupAction(G.g0, H.g0, beta0)
        B1, B0 = b1.perms, b0.perms
        ha = H.act.perms
        hit = first_index(H.mu[B1] != B0[:, H.mu])
        if hit is not None:
            raise NotAutomorphism("beta(g0) does not commute with d", hit)
        hit = first_index(B1[:, ha] != _act_after(B1, B0, ha))
        if hit is not None:
            raise NotAutomorphism("beta(g0) does not respect the action", hit)
        for g1 in range(G.g1.order):
            hit = derivation_failure(H, al[g1])
            if hit is not None:
                raise NotDerivation("alpha(g1) is not a derivation", (g1,) + hit)
        hit = first_index(al[G.g1.identity] != H.g1.identity)
        if hit is not None:
            raise NotHom("alpha", (G.g1.identity, G.g1.identity))
        hit = first_index(al[G.g1.table] != _star_all(H, al))
        if hit is not None:
            raise NotHom("alpha", hit[:2])
        d1, d0 = _delta_all(H, al)
        hit = first_index(d1 != B1[G.mu])
        if hit is not None:
            raise SquareFailure("Delta(alpha(g1)) = beta(mu g1) fails on H1", hit)
        hit = first_index(d0 != B0[G.mu])
        if hit is not None:
            raise SquareFailure("Delta(alpha(g1)) = beta(mu g1) fails on H0", hit)
        hit = first_index(al[G.act.perms] != _equivariant_rhs(B1, al, b0.inverse_perms))
        if hit is not None:
            raise EquivarianceFailure("alpha(g0 . g1) = beta(g0) . alpha(g1) fails", hit)
        self.G, self.H = G, H
        self.alpha = frozen(al)
        self.beta1, self.beta0 = b1, b0

    def __repr__(self) -> str:
        return f"XModAction({self.G} on {self.H})"

    @cached_property
    def beta1_mu(self) -> GroupAction:
        """The action ``g1 -> beta1(mu g1)`` of ``G1`` on ``H1``."""
        return GroupAction(self.G.g1, self.H.g1, self.beta1.perms[self.G.mu])

    @cached_property
    def is_adjoint(self) -> bool:
        ref = adjoint_xmod_action(self.G) if self.G == self.H else None
        return ref is not None and np.array_equal(ref.alpha, self.alpha) \
            and ref.beta1 == self.beta1 and ref.beta0 == self.beta0

    def to_actor(self, actor: Actor) -> XModMorphism:
        """The same action as a crossed-module morphism into ``actor``."""
        di = {d.tobytes(): k for k, d in enumerate(actor.derivations)}
        ai = {e.tobytes() + r.tobytes(): k for k, (e, r) in enumerate(actor.automorphisms)}
        try:
            f1 = [di[np.asarray(a, dtype=np.int64).tobytes()] for a in self.alpha]
            f0 = [ai[self.beta1.perms[g].astype(np.int64).tobytes() + self.beta0.perms[g].astype(np.int64).tobytes()]
                  for g in range(self.G.g0.order)]
        except KeyError as exc:
            raise InvariantViolation("action does not land in the actor") from exc
        return XModMorphism(self.G, actor.xmod, f1, f0, "action")


def _act_after(B1, B0, ha):
    # [g0, h0, h1] -> beta0(g0)h0 . beta1(g0)h1
    return ha[B0[:, :, None], B1[:, None, :]]


def _star_all(H: CrossedModule, al: np.ndarray) -> np.ndarray:
    # [a, b, x] -> (alpha_a * alpha_b)(x)
    inner = H.g0.table[H.mu[al], np.arange(H.g0.order)]
    return H.g1.table[al[:, inner], al[None, :, :]]


def _delta_all(H: CrossedModule, al: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d1 = H.g1.table[al[:, H.mu], np.arange(H.g1.order)]
    d0 = H.g0.table[H.mu[al], np.arange(H.g0.order)]
    return d1, d0


def _equivariant_rhs(B1, al, inv0) -> np.ndarray:
    # [g0, g1, h0] -> beta1(g0)(alpha(g1)(beta0(g0)^-1 h0))
    inner = al[np.arange(al.shape[0])[None, :, None], inv0[:, None, :]]
    return B1[np.arange(B1.shape[0])[:, None, None], inner]


def adjoint_xmod_action(X: CrossedModule) -> XModAction:
    """``alpha(g1)g0 = g1 (g0 . g1^-1)``, ``beta = (act, conjugation)``."""
    a = X.act.perms
    g1 = np.arange(X.g1.order)
    alpha = X.g1.table[g1[:, None], a.T[X.g1.inverses]]
    return XModAction(X, X, alpha, X.act, conjugation_action(X.g0))


def trivial_xmod_action(G: CrossedModule, H: CrossedModule) -> XModAction:
    alpha = np.full((G.g1.order, H.g0.order), H.g1.identity, dtype=np.int64)
    return XModAction(G, H, alpha, trivial_action(G.g0, H.g1), trivial_action(G.g0, H.g0))


def semidirect_xmod(A: XModAction) -> CrossedModule:
    """``H1 x| G1 -> H0 x| G0`` built from an action of ``G`` on ``H``."""
    G, H = A.G, A.H
    top = semidirect_product(H.g1, G.g1, A.beta1_mu)
    bottom = semidirect_product(H.g0, G.g0, A.beta0)
    n1, n0 = G.g1.order, G.g0.order
    a1 = np.arange(top.order)
    h1, g1 = a1 // n1, a1 % n1
    mu = H.mu[h1] * n0 + G.mu[g1]
    a0 = np.arange(bottom.order)
    h0, g0 = a0 // n0, a0 % n0
    # (h0,g0) acting on (h1,g1): (h0 . (beta1(g0)h1 . alpha(g0.g1)(h0^-1)), g0.g1)
    gg1 = G.act.perms[g0[:, None], g1[None, :]]
    inner = H.g1.table[A.beta1.perms[g0[:, None], h1[None, :]],
                       A.alpha[gg1, H.g0.inverses[h0][:, None]]]
    hh1 = H.act.perms[h0[:, None], inner]
    return CrossedModule(top, bottom, mu, hh1 * n1 + gg1)


def action_2group_from_xmod(A: XModAction) -> TwoGroupAction:
    """The induced action of ``G1 x| G0 ⇉ G0`` on ``H1 x| H0 ⇉ H0``.

    ``(g1,g0)`` sends ``(h1,h0)`` to ``(beta1(mu(g1) g0)h1 . alpha(g1)(beta0(g0)h0), beta0(g0)h0)``.
    """
    G, H = A.G, A.H
    P, Q = G.two_group, H.two_group
    x = np.arange(P.n)
    g1, g0 = x // G.g0.order, x % G.g0.order
    y = np.arange(Q.n)
    h1, h0 = y // H.g0.order, y % H.g0.order
    m = G.g0.table[G.mu[g1], g0]
    bh0 = A.beta0.perms[g0[:, None], h0[None, :]]
    new1 = H.g1.table[A.beta1.perms[m[:, None], h1[None, :]], A.alpha[g1[:, None], bh0]]
    return TwoGroupAction(P, Q, new1 * H.g0.order + bh0, A.beta0.perms)


def action_xmod_from_2group(act: TwoGroupAction) -> XModAction:
    """The induced action of ``ker src -> P0`` on ``ker src -> Q0``."""
    P, Q = act.actor, act.target
    KP, KQ = P.kernel_src.elements, Q.kernel_src.elements
    pos = np.full(Q.n, -1, dtype=np.int64)
    pos[KQ] = np.arange(KQ.size)
    f = act.phi.perms
    uq = Q.unit
    alpha = pos[Q.arrows.table[f[KP[:, None], uq[None, :]], Q.arrows.inverses[uq][None, :]]]
    beta1 = pos[f[P.unit][:, KQ]]
    if (alpha < 0).any() or (beta1 < 0).any():
        raise InvariantViolation("induced action leaves ker src")
    return XModAction(P.crossed_module, Q.crossed_module, alpha, beta1, act.phi0.perms)

"""Relative Rota-Baxter operators on finite 2-groups.

A pair ``(B, B0)`` is a relative Rota-Baxter operator on ``P ⇉ P0`` with
respect to an action of ``P`` on ``Q`` when ``B`` and ``B0`` are relative
Rota-Baxter operators on the arrow and object groups and together form a
functor ``Q -> P``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import (
    AlgebraError,
    ComponentFailure,
    InvariantViolation,
    NotAdjointAction,
    NotAutomorphism,
    NotGroupoidMorphism,
    RRBFailure,
)
from ..fingroup import GroupAction, first_index, frozen, scan_rows
from ..search import DEFAULT_BUDGET, enumerate_rrb_maps
from ..twogroup import (
    SubTwoGroup,
    TwoGroup,
    TwoGroupAction,
    TwoGroupMorphism,
    adjoint_action,
    discrete_two_group,
    groupoid_morphism_failure,
    pair_two_group,
    sub_two_group,
)
from .group import RRBGroupOp, as_map, descendant_group, is_rota_baxter_action, rrb_failure


class RRB2GroupOp:
    """A validated relative Rota-Baxter operator ``(B, B0): Q -> P``."""

    def __init__(self, action: TwoGroupAction, B, B0):
        P, Q = action.actor, action.target
        B = as_map(B, Q.n, P.n, "B")
        B0 = as_map(B0, Q.n0, P.n0, "B0")
        for name, act, m in (("B", action.phi, B), ("B0", action.phi0, B0)):
            hit = rrb_failure(act, m)
            if hit is not None:
                raise ComponentFailure(name, RRBFailure("relative Rota-Baxter identity fails", hit))
        failure = groupoid_morphism_failure(Q, P, B, B0)
        if failure is not None:
            raise NotGroupoidMorphism(*failure)
        self.action = action
        self.B, self.B0 = frozen(B), frozen(B0)

    @property
    def P(self) -> TwoGroup:
        return self.action.actor

    @property
    def Q(self) -> TwoGroup:
        return self.action.target

    def __repr__(self) -> str:
        return f"RRB2GroupOp(B={self.B.tolist()}, B0={self.B0.tolist()})"

    def key(self) -> tuple:
        return tuple(self.B.tolist()), tuple(self.B0.tolist())

    @cached_property
    def components(self) -> tuple[RRBGroupOp, RRBGroupOp]:
        return RRBGroupOp(self.action.phi, self.B), RRBGroupOp(self.action.phi0, self.B0)

    @cached_property
    def descendant(self) -> "DescendantTwoGroup":
        return descendant_two_group(self)


def verify_rrb_two_group(B, B0, action: TwoGroupAction) -> RRB2GroupOp:
    return RRB2GroupOp(action, B, B0)


def rrb_two_group_failure(action: TwoGroupAction, B, B0) -> AlgebraError | None:
    try:
        RRB2GroupOp(action, B, B0)
    except AlgebraError as exc:
        return exc
    return None


# ----------------------------------------------------------------------------
# graphs and the semidirect characterisation

def graph_failure(action: TwoGroupAction, B, B0) -> tuple[str, tuple] | None:
    """First reason the graph of ``(B, B0)`` fails to be a sub-2-group of ``Q x| P``."""
    P, Q = action.actor, action.target
    S = action.semidirect
    B, B0 = np.asarray(B), np.asarray(B0)
    gr = np.arange(Q.n) * P.n + B
    gr0 = np.arange(Q.n0) * P.n0 + B0
    member = np.zeros(S.n, dtype=bool)
    member[gr] = True
    member0 = np.zeros(S.n0, dtype=bool)
    member0[gr0] = True
    hit = scan_rows(Q.n, lambda rows: ~member[S.arrows.table[gr[rows][:, None], gr[None, :]]])
    if hit is not None:
        return "closed under products", hit
    hit = first_index(~member0[S.objects.table[gr0[:, None], gr0[None, :]]])
    if hit is not None:
        return "object graph closed under products", hit
    for name, m in (("src", S.src), ("tgt", S.tgt)):
        hit = first_index(~member0[m[gr]])
        if hit is not None:
            return f"{name} maps the graph into the object graph", hit
    hit = first_index(~member[S.unit[gr0]])
    if hit is not None:
        return "unit maps the object graph into the graph", hit
    ok = S.src[gr][:, None] == S.tgt[gr][None, :]
    a, b = np.nonzero(ok)
    hit = first_index(~member[S.compose_many(gr[a], gr[b])])
    if hit is not None:
        return "closed under composition", (int(a[hit[0]]), int(b[hit[0]]))
    return None


def graph_2subgroup(op: RRB2GroupOp) -> SubTwoGroup:
    P, Q = op.P, op.Q
    failure = graph_failure(op.action, op.B, op.B0)
    if failure is not None:
        raise InvariantViolation(f"graph is not a sub-2-group: {failure[0]}", failure[1])
    S = op.action.semidirect
    return sub_two_group(S, np.arange(Q.n) * P.n + op.B, np.arange(Q.n0) * P.n0 + op.B0)


def hat_maps(action: TwoGroupAction, B, B0) -> tuple[np.ndarray, np.ndarray]:
    """``(q, p) -> (e, p^-1 . B q)`` on ``Q x| P`` and likewise on objects."""
    P, Q = action.actor, action.target
    B, B0 = np.asarray(B), np.asarray(B0)
    a = np.arange(Q.n * P.n)
    q, p = a // P.n, a % P.n
    hat = Q.arrows.identity * P.n + P.arrows.table[P.arrows.inverses[p], B[q]]
    a0 = np.arange(Q.n0 * P.n0)
    q0, p0 = a0 // P.n0, a0 % P.n0
    hat0 = Q.objects.identity * P.n0 + P.objects.table[P.objects.inverses[p0], B0[q0]]
    return hat, hat0


def hat_B(op: RRB2GroupOp) -> RRB2GroupOp:
    """The Rota-Baxter operator on the semidirect product 2-group."""
    return RRB2GroupOp(op.action.semidirect_adjoint, *hat_maps(op.action, op.B, op.B0))


# ----------------------------------------------------------------------------
# descendants

@dataclass(frozen=True, eq=False)
class DescendantTwoGroup:
    two_group: TwoGroup
    morphism: TwoGroupMorphism


def descendant_two_group(op: RRB2GroupOp) -> DescendantTwoGroup:
    """``Q`` with products ``q . phi(Bq) q'`` and its own groupoid structure."""
    Q = op.Q
    arrows = descendant_group(op.action.phi, op.B)
    objects = descendant_group(op.action.phi0, op.B0)
    try:
        D = TwoGroup(arrows, objects, Q.src, Q.tgt, Q.unit)
        mor = TwoGroupMorphism(D, op.P, op.B, op.B0, "B")
    except AlgebraError as exc:
        raise InvariantViolation(f"descendant 2-group fails: {exc}") from exc
    p, q = Q.composable
    hit = first_index(D.compose_many(p, q) != Q.compose_many(p, q))
    if hit is not None:
        raise InvariantViolation("descendant composition differs from the original",
                                 (int(p[hit[0]]), int(q[hit[0]])))
    return DescendantTwoGroup(D, mor)


@dataclass(frozen=True, eq=False)
class DescendantAction:
    """Action of the descendant 2-group on the groupoid ``P ⇉ P0``."""
    perms: np.ndarray
    perms0: np.ndarray


def _descendant_perms(act: GroupAction, B, dag) -> np.ndarray:
    G = act.actor
    inner = np.asarray(B)[act.perms[:, dag].T]
    return G.table[G.table[G.inverses[inner], np.arange(G.order)[None, :]], np.asarray(B)[dag][:, None]]


def descendant_action(op: RRB2GroupOp) -> DescendantAction:
    """``phi^B(q)p = B(phi(p) q')^-1 . p . B(q')`` with ``q'`` the descendant inverse."""
    P = op.P
    D = op.descendant.two_group
    f = _descendant_perms(op.action.phi, op.B, D.arrows.inverses)
    f0 = _descendant_perms(op.action.phi0, op.B0, D.objects.inverses)
    for name, perms, grp in (("arrows", f, D.arrows), ("objects", f0, D.objects)):
        n = perms.shape[1]
        hit = first_index(np.sort(perms, axis=1) != np.arange(n))
        if hit is not None:
            raise InvariantViolation(f"descendant action on {name} is not by bijections", (hit[0],))
        hit = first_index(perms[grp.identity] != np.arange(n))
        if hit is not None:
            raise InvariantViolation(f"descendant identity acts nontrivially on {name}", hit)
        for s in grp.generators:
            hit = first_index(perms[grp.table[:, s]] != perms[:, perms[s]])
            if hit is not None:
                raise InvariantViolation(f"descendant action on {name} is not a homomorphism", (hit[0], s))
    for name, m in (("src", P.src), ("tgt", P.tgt)):
        hit = first_index(m[f] != f0[getattr(D, name)][:, m])
        if hit is not None:
            raise InvariantViolation(f"{name}(phi^B(q)p) != phi0^B({name} q)({name} p)", hit)
    hit = first_index(f[D.unit][:, P.unit] != P.unit[f0])
    if hit is not None:
        raise InvariantViolation("descendant action does not preserve units", hit)
    q1, q2 = D.composable
    p1, p2 = P.composable
    qq = D.compose_many(q1, q2)
    pp = P.compose_many(p1, p2)
    for k in range(q1.size):
        lhs = f[qq[k], pp]
        rhs = P.compose_many(f[q1[k], p1], f[q2[k], p2])
        hit = first_index(lhs != rhs)
        if hit is not None:
            j = hit[0]
            raise InvariantViolation("descendant action does not preserve composition",
                                     (int(q1[k]), int(q2[k]), int(p1[j]), int(p2[j])))
    return DescendantAction(frozen(f), frozen(f0))


def rb_on_descendant(op: RRB2GroupOp) -> RRB2GroupOp:
    """A Rota-Baxter operator on ``P`` is again one on the descendant ``P^B``."""
    require_adjoint(op)
    D = op.descendant.two_group
    return RRB2GroupOp(adjoint_action(D), op.B, op.B0)


# ----------------------------------------------------------------------------
# derived operators

def require_adjoint(op: RRB2GroupOp) -> None:
    if not op.action.is_adjoint:
        raise NotAdjointAction("operation needs a Rota-Baxter operator (adjoint action)")


def twist_rrb(op: RRB2GroupOp, theta, theta0, rho, rho0) -> RRB2GroupOp:
    """``(rho^-1 B theta, rho0^-1 B0 theta0)`` for an automorphism ``theta x rho`` of ``Q x| P``."""
    P = op.P
    S = op.action.semidirect
    theta, theta0, rho, rho0 = (np.asarray(x) for x in (theta, theta0, rho, rho0))
    a = np.arange(S.n)
    a0 = np.arange(S.n0)
    f = theta[a // P.n] * P.n + rho[a % P.n]
    f0 = theta0[a0 // P.n0] * P.n0 + rho0[a0 % P.n0]
    try:
        TwoGroupMorphism(S, S, f, f0, "twist").require_isomorphism()
    except AlgebraError as exc:
        raise NotAutomorphism(f"theta x rho is not a 2-group automorphism: {exc}") from exc
    return RRB2GroupOp(op.action, np.argsort(rho)[op.B[theta]], np.argsort(rho0)[op.B0[theta0]])


def bar_B(op: RRB2GroupOp) -> RRB2GroupOp:
    """``p -> p^-1 . B(p^-1)``."""
    require_adjoint(op)
    P = op.P
    inv, inv0 = P.arrows.inverses, P.objects.inverses
    return RRB2GroupOp(op.action, P.arrows.table[inv, op.B[inv]], P.objects.table[inv0, op.B0[inv0]])


def plus_maps(op: RRB2GroupOp) -> tuple[np.ndarray, np.ndarray]:
    P = op.P
    return (P.arrows.table[np.arange(P.n), op.B], P.objects.table[np.arange(P.n0), op.B0])


def plus_B(op: RRB2GroupOp) -> TwoGroupMorphism:
    """``p -> p . B p`` as a 2-group homomorphism from the descendant."""
    require_adjoint(op)
    return TwoGroupMorphism(op.descendant.two_group, op.P, *plus_maps(op), "B+")


def rb_group_to_rb_2groups(rb: RRBGroupOp) -> tuple[RRB2GroupOp, RRB2GroupOp]:
    """A Rota-Baxter operator on ``G`` on ``G ⇉ G`` and on ``G x| G ⇉ G``.

    On the second, ``(p, l) -> (B(p l) B(l)^-1, B l)``.
    """
    if not is_rota_baxter_action(rb.action):
        raise NotAdjointAction("needs a Rota-Baxter operator (adjoint action)")
    G, B = rb.G, rb.B
    discrete = RRB2GroupOp(adjoint_action(discrete_two_group(G)), B, B)
    P = pair_two_group(G)
    a = np.arange(P.n)
    p, l = a // G.order, a % G.order
    tilde = G.table[B[G.table[p, l]], G.inverses[B[l]]] * G.order + B[l]
    return discrete, RRB2GroupOp(adjoint_action(P), tilde, B)


# ----------------------------------------------------------------------------
# enumeration

def enumerate_rrb_two_group(action: TwoGroupAction, budget: int = DEFAULT_BUDGET,
                            jobs: int = 1) -> list[RRB2GroupOp]:
    """All operators, sorted by ``(B, B0)``.

    ``B0`` is enumerated first; it restricts the value of ``B q`` to arrows
    from ``B0(src q)`` to ``B0(tgt q)``.
    """
    P, Q = action.actor, action.target
    fibers: dict[tuple[int, int], set[int]] = {}
    for p in range(P.n):
        fibers.setdefault((int(P.src[p]), int(P.tgt[p])), set()).add(p)
    found = []
    for B0 in enumerate_rrb_maps(action.phi0, budget=budget, jobs=jobs):
        allowed = [fibers.get((B0[Q.src[q]], B0[Q.tgt[q]]), set()) for q in range(Q.n)]
        if not all(allowed):
            continue
        for B in enumerate_rrb_maps(action.phi, allowed=allowed, budget=budget, jobs=jobs):
            if groupoid_morphism_failure(Q, P, B, B0) is None:
                found.append(RRB2GroupOp(action, B, B0))
    found.sort(key=RRB2GroupOp.key)
    return found

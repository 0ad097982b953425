"""Crossed homomorphisms on groups, 2-groups and crossed modules.

``D: G -> H`` is a crossed homomorphism for an action ``phi`` of ``G`` on
``H`` when ``D(g g') = D(g) . phi(g) D(g')``.  Bijective crossed
homomorphisms are exactly the inverses of bijective relative Rota-Baxter
operators; :func:`invert_correspondence` passes between the two.
"""

from __future__ import annotations

from typing import Iterator, Literal

import numpy as np

from .errors import (
    AlgebraError,
    CocycleFailure,
    ComponentFailure,
    InvariantViolation,
    MixedFailure,
    NotBijective,
    NotGroupoidMorphism,
    SquareFailure,
)
from .fingroup import GroupAction, first_index, frozen, scan_rows
from .rrb.group import RRBGroupOp, as_map
from .rrb.two import RRB2GroupOp
from .rrb.xmod import RRBXModOp
from .search import DEFAULT_BUDGET, enumerate_cocycles
from .twogroup import SubTwoGroup, TwoGroupAction, groupoid_morphism_failure, sub_two_group
from .xmod import XModAction

Level = Literal["group", "two_group", "xmod"]


def cocycle_failure(action: GroupAction, D) -> tuple[int, int] | None:
    """First ``(g, g')`` with ``D(g g') != D(g) . phi(g) D(g')``."""
    G, H = action.actor, action.target
    D = np.asarray(D)
    phi = action.perms

    def bad(rows):
        rhs = H.table[D[rows][:, None], phi[rows][:, D]]
        return D[G.table[rows]] != rhs

    return scan_rows(G.order, bad)


class CrossedHomGroup:
    def __init__(self, action: GroupAction, D):
        D = as_map(D, action.actor.order, action.target.order, "D")
        hit = cocycle_failure(action, D)
        if hit is not None:
            raise CocycleFailure("D(gg') != D(g) . phi(g)D(g')", hit)
        self.action = action
        self.D = frozen(D)

    def __repr__(self) -> str:
        return f"CrossedHomGroup({self.D.tolist()})"


class CrossedHom2Group:
    def __init__(self, action: TwoGroupAction, D, D0):
        P, Q = action.actor, action.target
        D = as_map(D, P.n, Q.n, "D")
        D0 = as_map(D0, P.n0, Q.n0, "D0")
        for name, act, m in (("D", action.phi, D), ("D0", action.phi0, D0)):
            hit = cocycle_failure(act, m)
            if hit is not None:
                raise ComponentFailure(name, CocycleFailure("crossed homomorphism identity fails", hit))
        failure = groupoid_morphism_failure(P, Q, D, D0)
        if failure is not None:
            raise NotGroupoidMorphism(*failure)
        self.action = action
        self.D, self.D0 = frozen(D), frozen(D0)

    def __repr__(self) -> str:
        return f"CrossedHom2Group(D={self.D.tolist()}, D0={self.D0.tolist()})"

    def key(self) -> tuple:
        return tuple(self.D.tolist()), tuple(self.D0.tolist())


def mixed_xhom_failure(action: XModAction, D1, D0) -> tuple[int, int] | None:
    """First ``(g0, g1)`` with ``D1(g0 . g1) != D0 g0 . (beta1(g0) D1 g1 . alpha(g0 . g1)(D0 g0)^-1)``."""
    G, H = action.G, action.H
    D1, D0 = np.asarray(D1), np.asarray(D0)
    gg = G.act.perms
    inv_d0 = H.g0.inverses[D0]
    inner = H.g1.table[action.beta1.perms[:, D1], action.alpha[gg, inv_d0[:, None]]]
    rhs = H.act.perms[D0[:, None], inner]
    return first_index(D1[gg] != rhs)


class CrossedHomXMod:
    def __init__(self, action: XModAction, D1, D0):
        G, H = action.G, action.H
        D1 = as_map(D1, G.g1.order, H.g1.order, "D1")
        D0 = as_map(D0, G.g0.order, H.g0.order, "D0")
        hit = first_index(H.mu[D1] != D0[G.mu])
        if hit is not None:
            raise SquareFailure("d o D1 = D0 o mu fails", hit)
        for name, act, m in (("D1", action.beta1_mu, D1), ("D0", action.beta0, D0)):
            hit = cocycle_failure(act, m)
            if hit is not None:
                raise ComponentFailure(name, CocycleFailure("crossed homomorphism identity fails", hit))
        hit = mixed_xhom_failure(action, D1, D0)
        if hit is not None:
            raise MixedFailure("D1(g0 . g1) != D0g0 . (beta1(g0)D1g1 . alpha(g0 . g1)(D0g0)^-1)", hit)
        self.action = action
        self.D1, self.D0 = frozen(D1), frozen(D0)

    def __repr__(self) -> str:
        return f"CrossedHomXMod(D1={self.D1.tolist()}, D0={self.D0.tolist()})"

    def key(self) -> tuple:
        return tuple(self.D1.tolist()), tuple(self.D0.tolist())


def verify_crossed_hom(level: Level, maps, action):
    """Validate ``maps`` (one array, or a pair of arrays) at ``level``."""
    if level == "group":
        return CrossedHomGroup(action, maps)
    if level == "two_group":
        return CrossedHom2Group(action, *maps)
    if level == "xmod":
        return CrossedHomXMod(action, *maps)
    raise ValueError(f"unknown level {level!r}")


def crossed_hom_failure(level: Level, maps, action) -> AlgebraError | None:
    try:
        verify_crossed_hom(level, maps, action)
    except AlgebraError as exc:
        return exc
    return None


# ----------------------------------------------------------------------------
# graphs, hat-D and the derived action

def graph_failure(action: TwoGroupAction, D, D0) -> tuple[str, tuple] | None:
    """First reason ``{(Dp, p)}`` fails to be a sub-2-group of ``Q x| P``."""
    P = action.actor
    S = action.semidirect
    D, D0 = np.asarray(D), np.asarray(D0)
    gr = D * P.n + np.arange(P.n)
    gr0 = D0 * P.n0 + np.arange(P.n0)
    member = np.zeros(S.n, dtype=bool)
    member[gr] = True
    member0 = np.zeros(S.n0, dtype=bool)
    member0[gr0] = True
    hit = scan_rows(P.n, lambda rows: ~member[S.arrows.table[gr[rows][:, None], gr[None, :]]])
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
    a, b = np.nonzero(S.src[gr][:, None] == S.tgt[gr][None, :])
    hit = first_index(~member[S.compose_many(gr[a], gr[b])])
    if hit is not None:
        return "closed under composition", (int(a[hit[0]]), int(b[hit[0]]))
    return None


def graph_check(dh: CrossedHom2Group) -> SubTwoGroup:
    failure = graph_failure(dh.action, dh.D, dh.D0)
    if failure is not None:
        raise InvariantViolation(f"graph is not a sub-2-group: {failure[0]}", failure[1])
    P = dh.action.actor
    S = dh.action.semidirect
    return sub_two_group(S, dh.D * P.n + np.arange(P.n), dh.D0 * P.n0 + np.arange(P.n0))


def _hat(G, H, act: GroupAction, D) -> np.ndarray:
    # (q, p) -> (phi(p^-1)(q^-1 . D p), e)
    a = np.arange(H.order * G.order)
    q, p = a // G.order, a % G.order
    inner = H.table[H.inverses[q], np.asarray(D)[p]]
    return act.perms[G.inverses[p], inner] * G.order + G.identity


def hat_D(dh: CrossedHom2Group) -> RRB2GroupOp:
    """The Rota-Baxter operator on the semidirect product 2-group."""
    act = dh.action
    P, Q = act.actor, act.target
    hat = _hat(P.arrows, Q.arrows, act.phi, dh.D)
    hat0 = _hat(P.objects, Q.objects, act.phi0, dh.D0)
    return RRB2GroupOp(act.semidirect_adjoint, hat, hat0)


def _derived_perms(act: GroupAction, D) -> np.ndarray:
    H = act.target
    D = np.asarray(D)
    return H.table[H.table[D[:, None], act.perms], H.inverses[D][:, None]]


def derived_action(dh: CrossedHom2Group) -> tuple[TwoGroupAction, CrossedHom2Group]:
    """``p . q = Dp . phi(p)q . (Dp)^-1`` and the crossed homomorphism ``p -> (Dp)^-1``."""
    act = dh.action
    P, Q = act.actor, act.target
    new = TwoGroupAction(P, Q, _derived_perms(act.phi, dh.D), _derived_perms(act.phi0, dh.D0))
    return new, CrossedHom2Group(new, Q.arrows.inverses[dh.D], Q.objects.inverses[dh.D0])


# ----------------------------------------------------------------------------
# formal inverses

def _inverse_map(m, name: str) -> np.ndarray:
    m = np.asarray(m)
    if m.size and m.max() >= m.size:
        raise NotBijective(name, (int(np.argmax(m)),))
    seen = np.zeros(m.size, dtype=bool)
    seen[m] = True
    hit = first_index(~seen)
    if hit is not None:
        raise NotBijective(name, hit)
    return np.argsort(m)


def invert_correspondence(obj):
    """Pass between bijective relative Rota-Baxter operators and bijective crossed homomorphisms.

    Works at every level; at the 2-group level the result is validated like
    any other input, so a failure would surface as an exception rather than
    being assumed away.
    """
    if isinstance(obj, RRBGroupOp):
        return CrossedHomGroup(obj.action, _inverse_map(obj.B, "B"))
    if isinstance(obj, CrossedHomGroup):
        return RRBGroupOp(obj.action, _inverse_map(obj.D, "D"))
    if isinstance(obj, RRB2GroupOp):
        return CrossedHom2Group(obj.action, _inverse_map(obj.B, "B"), _inverse_map(obj.B0, "B0"))
    if isinstance(obj, CrossedHom2Group):
        return RRB2GroupOp(obj.action, _inverse_map(obj.D, "D"), _inverse_map(obj.D0, "D0"))
    if isinstance(obj, RRBXModOp):
        return CrossedHomXMod(obj.action, _inverse_map(obj.B1, "B1"), _inverse_map(obj.B0, "B0"))
    if isinstance(obj, CrossedHomXMod):
        return RRBXModOp(obj.action, _inverse_map(obj.D1, "D1"), _inverse_map(obj.D0, "D0"))
    raise TypeError(f"cannot invert {type(obj).__name__}")


def is_bijective_map(m, size: int) -> bool:
    """Whether ``m`` is a bijection onto ``range(size)``."""
    m = np.asarray(m)
    return m.size == size and np.unique(m).size == size


# ----------------------------------------------------------------------------
# enumeration and mutants

def enumerate_crossed_homs(level: Level, action, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list:
    if level == "group":
        return [CrossedHomGroup(action, D)
                for D in enumerate_cocycles(action, budget=budget, jobs=jobs)]
    if level == "two_group":
        return _enumerate_two_group(action, budget, jobs)
    if level == "xmod":
        return _enumerate_xmod(action, budget, jobs)
    raise ValueError(f"unknown level {level!r}")


def _enumerate_two_group(action: TwoGroupAction, budget: int, jobs: int) -> list[CrossedHom2Group]:
    P, Q = action.actor, action.target
    fibers: dict[tuple[int, int], set[int]] = {}
    for q in range(Q.n):
        fibers.setdefault((int(Q.src[q]), int(Q.tgt[q])), set()).add(q)
    found = []
    for D0 in enumerate_cocycles(action.phi0, budget=budget, jobs=jobs):
        allowed = [fibers.get((D0[P.src[p]], D0[P.tgt[p]]), set()) for p in range(P.n)]
        if not all(allowed):
            continue
        for D in enumerate_cocycles(action.phi, allowed=allowed, budget=budget, jobs=jobs):
            if groupoid_morphism_failure(P, Q, D, D0) is None:
                found.append(CrossedHom2Group(action, D, D0))
    found.sort(key=CrossedHom2Group.key)
    return found


def _enumerate_xmod(action: XModAction, budget: int, jobs: int) -> list[CrossedHomXMod]:
    G, H = action.G, action.H
    fibers: dict[int, set[int]] = {}
    for h1 in range(H.g1.order):
        fibers.setdefault(int(H.mu[h1]), set()).add(h1)
    found = []
    for D0 in enumerate_cocycles(action.beta0, budget=budget, jobs=jobs):
        allowed = [fibers.get(D0[G.mu[g1]], set()) for g1 in range(G.g1.order)]
        if not all(allowed):
            continue
        D0a = np.array(D0)
        for D1 in enumerate_cocycles(action.beta1_mu, allowed=allowed, budget=budget, jobs=jobs):
            if mixed_xhom_failure(action, D1, D0a) is None:
                found.append(CrossedHomXMod(action, D1, D0))
    found.sort(key=CrossedHomXMod.key)
    return found


def mutants(table, bound: int) -> Iterator[tuple[int, int, np.ndarray]]:
    """Every single-entry change of ``table``: ``(position, new value, mutated copy)``."""
    base = np.asarray(table)
    for pos in range(base.size):
        for v in range(bound):
            if v != base.flat[pos]:
                m = base.copy()
                m.flat[pos] = v
                yield pos, v, m

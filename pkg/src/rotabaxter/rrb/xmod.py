"""Relative Rota-Baxter operators on crossed modules.

For an action ``(alpha, beta)`` of ``G1 -> G0`` on ``H1 -> H0`` a pair
``(B1, B0)`` must commute with the boundary maps, ``B1`` must be a relative
Rota-Baxter operator for ``g1 -> beta1(mu g1)``, ``B0`` one for ``beta0``,
and the mixed identity

    B0 h0 . B1 h1 = B1(h0 . (beta1(B0 h0) h1 . alpha(B0 h0 . B1 h1)(h0^-1)))

must hold for all ``h0, h1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import (
    AlgebraError,
    ComponentFailure,
    InvariantViolation,
    MixedIdentityFailure,
    NotAdjointAction,
    NotAutomorphism,
    RRBFailure,
    SquareFailure,
)
from ..fingroup import first_index, frozen
from ..search import DEFAULT_BUDGET, enumerate_rrb_maps
from ..xmod import (
    CrossedModule,
    XModAction,
    XModMorphism,
    action_2group_from_xmod,
    action_xmod_from_2group,
    adjoint_xmod_action,
    semidirect_xmod,
    star,
    star_identity,
)
from .group import as_map, descendant_group, rrb_failure
from .two import RRB2GroupOp


def _mixed_inner(action: XModAction, B1, B0) -> tuple[np.ndarray, np.ndarray]:
    """``[h0, h1] -> B0 h0 . B1 h1`` and ``h0 . (beta1(B0 h0)h1 . alpha(B0 h0 . B1 h1)(h0^-1))``."""
    G, H = action.G, action.H
    g0 = B0
    lhs = G.act.perms[g0[:, None], B1[None, :]]
    h0 = np.arange(H.g0.order)
    inner = H.g1.table[action.beta1.perms[g0], action.alpha[lhs, H.g0.inverses[h0][:, None]]]
    return lhs, H.act.perms[h0[:, None], inner]


def mixed_failure(action: XModAction, B1, B0) -> tuple[int, int] | None:
    B1, B0 = np.asarray(B1), np.asarray(B0)
    lhs, inner = _mixed_inner(action, B1, B0)
    return first_index(lhs != B1[inner])


class RRBXModOp:
    """A validated relative Rota-Baxter operator ``(B1, B0)`` on a crossed module."""

    def __init__(self, action: XModAction, B1, B0):
        G, H = action.G, action.H
        B1 = as_map(B1, H.g1.order, G.g1.order, "B1")
        B0 = as_map(B0, H.g0.order, G.g0.order, "B0")
        hit = first_index(G.mu[B1] != B0[H.mu])
        if hit is not None:
            raise SquareFailure("mu o B1 = B0 o d fails", hit)
        for name, act, m in (("B1", action.beta1_mu, B1), ("B0", action.beta0, B0)):
            hit = rrb_failure(act, m)
            if hit is not None:
                raise ComponentFailure(name, RRBFailure("relative Rota-Baxter identity fails", hit))
        hit = mixed_failure(action, B1, B0)
        if hit is not None:
            raise MixedIdentityFailure("B0h0 . B1h1 != B1(h0 . (beta1(B0h0)h1 . alpha(..)h0^-1))", hit)
        self.action = action
        self.B1, self.B0 = frozen(B1), frozen(B0)

    @property
    def G(self) -> CrossedModule:
        return self.action.G

    @property
    def H(self) -> CrossedModule:
        return self.action.H

    def __repr__(self) -> str:
        return f"RRBXModOp(B1={self.B1.tolist()}, B0={self.B0.tolist()})"

    def key(self) -> tuple:
        return tuple(self.B1.tolist()), tuple(self.B0.tolist())

    @cached_property
    def descendant(self) -> "DescendantXMod":
        return descendant_xmod(self)


def verify_rrb_xmod(B1, B0, action: XModAction) -> RRBXModOp:
    return RRBXModOp(action, B1, B0)


def rrb_xmod_failure(action: XModAction, B1, B0) -> AlgebraError | None:
    try:
        RRBXModOp(action, B1, B0)
    except AlgebraError as exc:
        return exc
    return None


def enumerate_rrb_xmod(action: XModAction, budget: int = DEFAULT_BUDGET,
                       jobs: int = 1) -> list[RRBXModOp]:
    """All operators, sorted by ``(B1, B0)``.

    ``B0`` is enumerated first; it pins ``B1 h1`` to the fibre of ``mu``
    over ``B0(d h1)``, and the mixed identity filters the survivors.
    """
    G, H = action.G, action.H
    fibers: dict[int, set[int]] = {}
    for g1 in range(G.g1.order):
        fibers.setdefault(int(G.mu[g1]), set()).add(g1)
    found = []
    for B0 in enumerate_rrb_maps(action.beta0, budget=budget, jobs=jobs):
        allowed = [fibers.get(B0[H.mu[h1]], set()) for h1 in range(H.g1.order)]
        if not all(allowed):
            continue
        B0a = np.array(B0)
        for B1 in enumerate_rrb_maps(action.beta1_mu, allowed=allowed, budget=budget, jobs=jobs):
            if mixed_failure(action, B1, B0a) is None:
                found.append(RRBXModOp(action, B1, B0))
    found.sort(key=RRBXModOp.key)
    return found


# ----------------------------------------------------------------------------
# correspondence with 2-group operators

def rrb_xmod_to_2group(op: RRBXModOp) -> RRB2GroupOp:
    """``(h1, h0) -> (B0 h0 . B1(beta1(B0 h0)^-1 (h0^-1 . h1)), B0 h0)``."""
    G, H = op.G, op.H
    y = np.arange(H.g1.order * H.g0.order)
    h1, h0 = y // H.g0.order, y % H.g0.order
    g0 = op.B0[h0]
    moved = H.act.perms[H.g0.inverses[h0], h1]
    inner = op.action.beta1.inverse_perms[g0, moved]
    g1 = G.act.perms[g0, op.B1[inner]]
    return RRB2GroupOp(action_2group_from_xmod(op.action), g1 * G.g0.order + g0, op.B0)


def rrb_2group_to_xmod(op: RRB2GroupOp) -> RRBXModOp:
    """Restrict ``B`` to the kernel of the source map."""
    P, Q = op.P, op.Q
    KP, KQ = P.kernel_src.elements, Q.kernel_src.elements
    pos = np.full(P.n, -1, dtype=np.int64)
    pos[KP] = np.arange(KP.size)
    B1 = pos[op.B[KQ]]
    if (B1 < 0).any():
        raise InvariantViolation("B does not map ker src into ker src")
    return RRBXModOp(action_xmod_from_2group(op.action), B1, op.B0)


# ----------------------------------------------------------------------------
# descendants

@dataclass(frozen=True, eq=False)
class MapDiffReport:
    """Pointwise check of ``(theta, tau)`` into ``Map(G0, G1) -> Diff(G1, G0, mu)``."""
    theta: np.ndarray
    tau1: np.ndarray
    tau0: np.ndarray
    failures: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True, eq=False)
class DescendantXMod:
    xmod: CrossedModule
    morphism: XModMorphism
    report: MapDiffReport


def descendant_xmod(op: RRBXModOp) -> DescendantXMod:
    action, G, H = op.action, op.G, op.H
    D1 = descendant_group(action.beta1_mu, op.B1)
    D0 = descendant_group(action.beta0, op.B0)
    _, inner = _mixed_inner(action, op.B1, op.B0)
    try:
        X = CrossedModule(D1, D0, H.mu, inner)
        mor = XModMorphism(X, G, op.B1, op.B0, "B")
    except AlgebraError as exc:
        raise InvariantViolation(f"descendant crossed module fails: {exc}") from exc
    return DescendantXMod(X, mor, map_diff_report(op, X))


def map_diff_maps(op: RRBXModOp, X: CrossedModule) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``theta[h1]``, ``tau1[h0]`` and ``tau0[h0]`` as arrays of maps.

    Inverses marked with a dagger are taken in the descendant groups.
    """
    action, G, H = op.action, op.G, op.H
    B1, B0 = op.B1, op.B0
    dag1, dag0 = X.g1.inverses, X.g0.inverses
    g0 = np.arange(G.g0.order)
    g1 = np.arange(G.g1.order)
    b1 = action.beta1.perms
    b0 = action.beta0.perms
    # theta(h1)g0 = (B1 beta1(g0) h1')^-1 . (g0 . B1 h1')
    left = G.g1.inverses[B1[b1[g0[None, :], dag1[:, None]]]]
    right = G.act.perms[g0[None, :], B1[dag1][:, None]]
    theta = G.g1.table[left, right]
    # tau0(h0)g0 = (B0 beta0(g0) h0')^-1 . g0 . B0 h0'
    left0 = G.g0.inverses[B0[b0[g0[None, :], dag0[:, None]]]]
    tau0 = G.g0.table[G.g0.table[left0, g0[None, :]], B0[dag0][:, None]]
    # tau1(h0)g1 = (B1(h0 . beta1(B0 h0)(alpha(g1) h0')))^-1 . (B0 h0 . g1)
    h0 = np.arange(H.g0.order)
    al = action.alpha[g1[None, :], dag0[:, None]]
    moved = b1[B0[h0][:, None], al]
    inner = H.act.perms[h0[:, None], moved]
    tau1 = G.g1.table[G.g1.inverses[B1[inner]], G.act.perms[B0[h0][:, None], g1[None, :]]]
    return theta, tau1, tau0


def map_diff_report(op: RRBXModOp, X: CrossedModule) -> MapDiffReport:
    """Check that ``(theta, tau)`` is a crossed-module morphism, recording every failure.

    ``Map(G0, G1)`` multiplies by ``star`` and ``Diff(G1, G0, mu)`` by
    composition; ``Delta(s) = (g1 -> s(mu g1) g1, g0 -> mu(s g0) g0)`` and
    ``(s1, s0)`` acts on ``s`` by ``s1 o s o s0^-1``.
    """
    G = op.G
    theta, tau1, tau0 = map_diff_maps(op, X)
    failures: list[tuple[str, tuple]] = []

    def note(name, mask, shift=()):
        hit = first_index(mask)
        if hit is not None:
            failures.append((name, tuple(shift) + hit))

    n1, n0 = X.g1.order, X.g0.order
    note("theta(e) is the star identity", theta[X.g1.identity] != star_identity(G.g0, G.g1))
    for a in range(n1):
        prod = np.stack([star(G.mu, G.g0, G.g1, theta[a], theta[b]) for b in range(n1)])
        note("theta is a homomorphism", theta[X.g1.table[a]] != prod, (a,))
    for name, t, size in (("tau1", tau1, G.g1.order), ("tau0", tau0, G.g0.order)):
        note(f"{name}(h0) is a bijection", np.sort(t, axis=1) != np.arange(size))
    note("mu o tau1 = tau0 o mu", G.mu[tau1] != tau0[:, G.mu])
    for t, name in ((tau1, "tau1"), (tau0, "tau0")):
        note(f"{name} is a homomorphism", t[X.g0.table] != _compose_all(t))
    d1 = G.g1.table[theta[:, G.mu], np.arange(G.g1.order)]
    d0 = G.g0.table[G.mu[theta], np.arange(G.g0.order)]
    note("Delta(theta h1) = tau1(d h1)", d1 != tau1[X.mu])
    note("Delta(theta h1) = tau0(d h1)", d0 != tau0[X.mu])
    inv0 = np.argsort(tau0, axis=1)
    for h0 in range(n0):
        acted = tau1[h0][theta[:, inv0[h0]]]
        note("theta(h0 . h1) = tau(h0) . theta(h1)", theta[X.act.perms[h0]] != acted, (h0,))
    return MapDiffReport(frozen(theta), frozen(tau1), frozen(tau0), failures)


def _compose_all(t: np.ndarray) -> np.ndarray:
    # [a, b, x] -> t[a][t[b][x]]
    return t[np.arange(t.shape[0])[:, None, None], t[None, :, :]]


def rb_on_descendant_xmod(op: RRBXModOp) -> RRBXModOp:
    """A Rota-Baxter operator stays one on its descendant crossed module."""
    if not op.action.is_adjoint:
        raise NotAdjointAction("operation needs a Rota-Baxter operator (adjoint action)")
    return RRBXModOp(adjoint_xmod_action(op.descendant.xmod), op.B1, op.B0)


def twist_rrb_xmod(op: RRBXModOp, psi1, psi0, phi1, phi0) -> RRBXModOp:
    """``(phi1^-1 B1 psi1, phi0^-1 B0 psi0)``."""
    S = semidirect_xmod(op.action)
    G = op.G
    psi1, psi0, phi1, phi0 = (np.asarray(x) for x in (psi1, psi0, phi1, phi0))
    a1 = np.arange(S.g1.order)
    a0 = np.arange(S.g0.order)
    f1 = psi1[a1 // G.g1.order] * G.g1.order + phi1[a1 % G.g1.order]
    f0 = psi0[a0 // G.g0.order] * G.g0.order + phi0[a0 % G.g0.order]
    try:
        mor = XModMorphism(S, S, f1, f0, "twist")
    except AlgebraError as exc:
        raise NotAutomorphism(f"psi x phi is not a crossed-module automorphism: {exc}") from exc
    if len(set(mor.f1.tolist())) != S.g1.order or len(set(mor.f0.tolist())) != S.g0.order:
        raise NotAutomorphism("psi x phi is not bijective")
    return RRBXModOp(op.action, np.argsort(phi1)[op.B1[psi1]], np.argsort(phi0)[op.B0[psi0]])

"""Relative Rota-Baxter operators on finite groups.

``B: H -> G`` is a relative Rota-Baxter operator with respect to an action
``phi`` of ``G`` on ``H`` when ``B(h) B(h') = B(h . phi(B h) h')`` for all
``h, h'``.  With ``H = G`` acting on itself by conjugation this is a
Rota-Baxter operator.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..errors import AlgebraError, InvariantViolation, RRBFailure
from ..fingroup import FiniteGroup, GroupAction, GroupHom, first_index, frozen, scan_rows
from ..search import DEFAULT_BUDGET, enumerate_rrb_maps


def as_map(values, size: int, bound: int, name: str) -> np.ndarray:
    """Check that ``values`` is an integer array of ``size`` entries in ``[0, bound)``."""
    arr = np.asarray(values)
    if arr.shape != (size,) or arr.dtype.kind not in "iu" or ((arr < 0) | (arr >= bound)).any():
        raise RRBFailure(f"{name} must be {size} integers in [0, {bound})")
    return arr.astype(np.int64, copy=False)


def rrb_failure(action: GroupAction, B) -> tuple[int, int] | None:
    """First pair ``(h, h')`` violating the relative Rota-Baxter identity."""
    G, H = action.actor, action.target
    B = np.asarray(B)
    phi = action.perms

    def bad(rows):
        Bh = B[rows]
        lhs = G.table[Bh[:, None], B[None, :]]
        return lhs != B[H.table[rows[:, None], phi[Bh]]]

    return scan_rows(H.order, bad)


def is_rota_baxter_action(action: GroupAction) -> bool:
    """Whether ``action`` is conjugation of a group on itself."""
    return action.actor == action.target and np.array_equal(action.perms, action.actor.conjugation)


class RRBGroupOp:
    """A validated relative Rota-Baxter operator ``B: H -> G``."""

    def __init__(self, action: GroupAction, B):
        B = as_map(B, action.target.order, action.actor.order, "B")
        hit = rrb_failure(action, B)
        if hit is not None:
            h, k = hit
            raise RRBFailure("B(h)B(h') != B(h . phi(Bh)h')", (h, k))
        self.action = action
        self.B = frozen(B)

    @property
    def G(self) -> FiniteGroup:
        return self.action.actor

    @property
    def H(self) -> FiniteGroup:
        return self.action.target

    def __repr__(self) -> str:
        return f"RRBGroupOp({self.B.tolist()})"

    @cached_property
    def descendant(self) -> FiniteGroup:
        """``H`` with product ``h . phi(B h) h'``."""
        return descendant_group(self.action, self.B)

    @cached_property
    def descendant_hom(self) -> GroupHom:
        return GroupHom(self.descendant, self.G, self.B, "B")


def verify_rrb_group(B, action: GroupAction) -> RRBGroupOp:
    return RRBGroupOp(action, B)


def descendant_group(action: GroupAction, B) -> FiniteGroup:
    H = action.target
    B = np.asarray(B)
    table = H.table[np.arange(H.order)[:, None], action.perms[B]]
    try:
        return FiniteGroup(table, labels=H.labels)
    except AlgebraError as exc:
        raise InvariantViolation(f"descendant product is not a group: {exc}") from exc


def descendant_group_action(op: RRBGroupOp) -> np.ndarray:
    """``perms[h, g] = B(phi(g) h')^-1 . g . B(h')`` with ``h'`` the descendant inverse of ``h``.

    This is an action of the descendant group on the set ``G``; the result
    is checked to be one.
    """
    G, D = op.G, op.descendant
    B, phi = op.B, op.action.perms
    dag = D.inverses
    inner = B[phi[:, dag].T]
    perms = G.table[G.table[G.inverses[inner], np.arange(G.order)[None, :]], B[dag][:, None]]
    hit = first_index(np.sort(perms, axis=1) != np.arange(G.order))
    if hit is not None:
        raise InvariantViolation("descendant action is not by bijections", (hit[0],))
    for s in D.generators:
        hit = first_index(perms[D.table[:, s]] != perms[:, perms[s]])
        if hit is not None:
            raise InvariantViolation("descendant action is not a homomorphism", (hit[0], s))
    return frozen(perms)


def enumerate_rrb_group(action: GroupAction, budget: int = DEFAULT_BUDGET,
                        jobs: int = 1) -> list[RRBGroupOp]:
    """All relative Rota-Baxter operators, in lexicographic order."""
    return [RRBGroupOp(action, B) for B in enumerate_rrb_maps(action, budget=budget, jobs=jobs)]


def decomposition_map(G: FiniteGroup, X, Y) -> np.ndarray:
    """``B(x y) = y^-1`` for an exact factorization ``G = X Y``."""
    X, Y = np.asarray(sorted(X)), np.asarray(sorted(Y))
    prods = G.table[X[:, None], Y[None, :]].ravel()
    if np.unique(prods).size != G.order or prods.size != G.order:
        raise InvariantViolation("G is not the exact product X Y")
    B = np.empty(G.order, dtype=np.int64)
    B[prods] = G.inverses[np.repeat(Y[None, :], X.size, axis=0).ravel()]
    return frozen(B)

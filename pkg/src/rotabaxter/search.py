"""Backtracking search for maps satisfying a pairwise functional identity.

The identities handled here all have the shape "for every pair of assigned
points ``x, y`` the value at some point ``pos(x, f(x), y, f(y))`` is forced
to ``val(x, f(x), y, f(y))``".  Relative Rota-Baxter operators, crossed
homomorphisms and derivations are of this form.  A rule object supplies the
forcing; the engine branches on the first unassigned point, propagates
forced values to a fixpoint and backtracks on a clash.  Every ordered pair of
assigned points is checked, so each complete assignment satisfies the
identity everywhere.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from typing import Protocol, Sequence

from .errors import SearchBudgetExceeded
from .fingroup import FiniteGroup, GroupAction

DEFAULT_BUDGET = 10**7


class PairRule(Protocol):
    def force(self, x: int, fx: int, y: int, fy: int) -> tuple[int, int]:
        """Point and value forced by the assigned pair ``(x, y)``."""


class RRBRule:
    """``B(h) B(h') = B(h . phi(B h) h')`` for ``B: target -> actor``."""

    def __init__(self, action: GroupAction):
        self.h = action.target.rows
        self.g = action.actor.rows
        self.phi = action.rows

    def force(self, x, fx, y, fy):
        return self.h[x][self.phi[fx][y]], self.g[fx][fy]


class CocycleRule:
    """``D(g g') = D(g) . phi(g) D(g')`` for ``D: actor -> target``."""

    def __init__(self, action: GroupAction):
        self.g = action.actor.rows
        self.h = action.target.rows
        self.phi = action.rows

    def force(self, x, fx, y, fy):
        return self.g[x][y], self.h[fx][self.phi[x][fy]]


def bfs_order(group: FiniteGroup) -> list[int]:
    """Elements in breadth-first order from the identity along generators."""
    seen = {group.identity}
    order = [group.identity]
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for s in group.generators:
            y = group.rows[x][s]
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


class _Search:
    def __init__(self, n_dom, n_cod, rule, allowed, budget, order):
        self.n_cod = n_cod
        self.rule = rule
        self.allowed = allowed
        self.budget = budget
        self.order = order
        self.val = [-1] * n_dom
        self.trail: list[int] = []
        self.nodes = 0
        self.found: list[tuple[int, ...]] = []

    def assign(self, pos: int, value: int) -> bool:
        val, trail, force, allowed = self.val, self.trail, self.rule.force, self.allowed
        pending = [(pos, value)]
        while pending:
            p, v = pending.pop()
            if val[p] >= 0:
                if val[p] != v:
                    return False
                continue
            if allowed is not None and v not in allowed[p]:
                return False
            val[p] = v
            trail.append(p)
            for k in range(len(trail)):
                y = trail[k]
                fy = val[y]
                for q, w in (force(p, v, y, fy), force(y, fy, p, v)):
                    cur = val[q]
                    if cur < 0:
                        pending.append((q, w))
                    elif cur != w:
                        return False
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.val[self.trail.pop()] = -1

    def candidates(self, pos: int) -> Sequence[int]:
        if self.allowed is not None:
            return sorted(self.allowed[pos])
        return range(self.n_cod)

    def run(self) -> None:
        pos = next((p for p in self.order if self.val[p] < 0), None)
        if pos is None:
            self.found.append(tuple(self.val))
            return
        for v in self.candidates(pos):
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(self.nodes, len(self.found))
            mark = len(self.trail)
            if self.assign(pos, v):
                self.run()
            self.undo(mark)


def _solve(args) -> tuple[list[tuple[int, ...]], int]:
    n_dom, n_cod, rule, fixed, allowed, budget, order = args
    s = _Search(n_dom, n_cod, rule, allowed, budget, order)
    for pos, v in fixed:
        if not s.assign(pos, v):
            return [], 0
    s.run()
    return s.found, s.nodes


def propagation_search(n_dom: int, n_cod: int, rule: PairRule, *,
                       fixed: Sequence[tuple[int, int]] = (),
                       allowed: Sequence[set[int]] | None = None,
                       order: Sequence[int] | None = None,
                       budget: int = DEFAULT_BUDGET,
                       jobs: int = 1) -> list[tuple[int, ...]]:
    """All maps ``range(n_dom) -> range(n_cod)`` obeying ``rule``.

    ``fixed`` pins values up front, ``allowed`` restricts the value at each
    point.  With ``jobs > 1`` the first branching point is split across
    worker processes.  Results come back sorted lexicographically.
    """
    order = list(order) if order is not None else list(range(n_dom))
    fixed = list(fixed)
    if jobs <= 1:
        found, _ = _solve((n_dom, n_cod, rule, fixed, allowed, budget, order))
        return sorted(found)
    probe = _Search(n_dom, n_cod, rule, allowed, budget, order)
    for pos, v in fixed:
        if not probe.assign(pos, v):
            return []
    pos = next((p for p in order if probe.val[p] < 0), None)
    if pos is None:
        return [tuple(probe.val)]
    tasks = [(n_dom, n_cod, rule, fixed + [(pos, v)], allowed, budget, order)
             for v in probe.candidates(pos)]
    found: list[tuple[int, ...]] = []
    nodes = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part, used in pool.map(_solve, tasks):
            found.extend(part)
            nodes += used
    if nodes > budget:
        raise SearchBudgetExceeded(nodes, len(found))
    return sorted(found)


def enumerate_cocycles(action: GroupAction, *, allowed=None, budget: int = DEFAULT_BUDGET,
                       jobs: int = 1) -> list[tuple[int, ...]]:
    """Maps ``D: actor -> target`` with ``D(gg') = D(g) phi(g)D(g')``."""
    g = action.actor
    return propagation_search(g.order, action.target.order, CocycleRule(action),
                              fixed=[(g.identity, action.target.identity)], allowed=allowed,
                              order=bfs_order(g), budget=budget, jobs=jobs)


def enumerate_rrb_maps(action: GroupAction, *, allowed=None, budget: int = DEFAULT_BUDGET,
                       jobs: int = 1) -> list[tuple[int, ...]]:
    """Maps ``B: target -> actor`` with ``B(h)B(h') = B(h phi(Bh)h')``."""
    h = action.target
    return propagation_search(h.order, action.actor.order, RRBRule(action),
                              fixed=[(h.identity, action.actor.identity)], allowed=allowed,
                              order=bfs_order(h), budget=budget, jobs=jobs)

"""Set-theoretic and categorical solutions of the Yang-Baxter equation.

A map ``R: X x X -> X x X`` is stored as a permutation of the ``n^2``
pairs, with ``(x, y)`` at index ``x*n + y``.  The braid relation
``(R x 1)(1 x R)(R x 1) = (1 x R)(R x 1)(1 x R)`` is checked by composing
permutation tables on the ``n^3`` triples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BraidFailure, FunctorialityFailure, NotBijective
from .fingroup import first_index, frozen
from .rrb.two import RRB2GroupOp
from .twogroup import TwoGroup


@dataclass(frozen=True, eq=False)
class SetYBMap:
    n: int
    perm: np.ndarray

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        v = int(self.perm[x * self.n + y])
        return divmod(v, self.n)


@dataclass(frozen=True, eq=False)
class CatYBSolution:
    R: SetYBMap
    R0: SetYBMap


def braid_failure(perm, n: int) -> tuple[int, int, int] | None:
    """First triple in lexicographic order where the braid relation fails."""
    perm = np.asarray(perm)
    t = np.arange(n ** 3)
    x, rest = t // (n * n), t % (n * n)
    # R x 1 and 1 x R as permutations of triples
    r12 = perm[rest // n + x * n] * n + rest % n
    yz = perm[rest]
    r23 = x * n * n + yz
    lhs = r12[r23[r12]]
    rhs = r23[r12[r23]]
    hit = first_index(lhs != rhs)
    if hit is None:
        return None
    k = hit[0]
    return k // (n * n), (k // n) % n, k % n


def verify_set_ybe(perm, n: int | None = None) -> SetYBMap:
    perm = np.asarray(perm, dtype=np.int64)
    if n is None:
        n = int(round(perm.size ** 0.5))
    if perm.shape != (n * n,):
        raise NotBijective("R", (perm.size,))
    seen = np.zeros(n * n, dtype=bool)
    if ((perm < 0) | (perm >= n * n)).any():
        raise NotBijective("R", (int(np.flatnonzero((perm < 0) | (perm >= n * n))[0]),))
    seen[perm] = True
    hit = first_index(~seen)
    if hit is not None:
        raise NotBijective("R", hit)
    hit = braid_failure(perm, n)
    if hit is not None:
        raise BraidFailure("braid relation fails", hit)
    return SetYBMap(n, frozen(perm))


def _pair_maps(Q: TwoGroup):
    a = np.arange(Q.n * Q.n)
    q, j = a // Q.n, a % Q.n
    a0 = np.arange(Q.n0 * Q.n0)
    x, y = a0 // Q.n0, a0 % Q.n0
    return {
        "src": Q.src[q] * Q.n0 + Q.src[j],
        "tgt": Q.tgt[q] * Q.n0 + Q.tgt[j],
        "unit": Q.unit[x] * Q.n + Q.unit[y],
    }


def functoriality_failure(sol: CatYBSolution, Q: TwoGroup) -> tuple[str, tuple] | None:
    """First violated condition for ``(R, R0)`` to be a functor of ``Q x Q``."""
    R, R0 = sol.R.perm, sol.R0.perm
    maps = _pair_maps(Q)
    for name in ("src", "tgt"):
        m = maps[name]
        hit = first_index(R0[m] != m[R])
        if hit is not None:
            return f"R0 o ({name} x {name}) = ({name} x {name}) o R", hit
    hit = first_index(R[maps["unit"]] != maps["unit"][R0])
    if hit is not None:
        return "R o (unit x unit) = (unit x unit) o R0", hit
    a, b = Q.composable
    first = (a[:, None] * Q.n + a[None, :]).ravel()
    second = (b[:, None] * Q.n + b[None, :]).ravel()
    ab = Q.compose_many(a, b)
    comp = (ab[:, None] * Q.n + ab[None, :]).ravel()
    u, v = R[first], R[second]
    rhs = Q.compose_many(u // Q.n, v // Q.n) * Q.n + Q.compose_many(u % Q.n, v % Q.n)
    hit = first_index(R[comp] != rhs)
    if hit is not None:
        k = hit[0]
        return "R(x * y) = R(x) * R(y)", (int(first[k]), int(second[k]))
    return None


def verify_cat_ybe(sol: CatYBSolution, Q: TwoGroup) -> CatYBSolution:
    R = verify_set_ybe(sol.R.perm, Q.n)
    R0 = verify_set_ybe(sol.R0.perm, Q.n0)
    failure = functoriality_failure(sol, Q)
    if failure is not None:
        raise FunctorialityFailure(*failure)
    return CatYBSolution(R, R0)


def _solution_table(G, act, B, D) -> np.ndarray:
    """``(q, j) -> (phi(Bq)j, (phi(Bq)j)^dagger . q . j)`` with products in the descendant ``D``."""
    n = G.order
    a = np.arange(n * n)
    q, j = a // n, a % n
    left = act.perms[np.asarray(B)[q], j]
    right = D.table[D.table[D.inverses[left], q], j]
    return left * n + right


def build_RB(op: RRB2GroupOp) -> CatYBSolution:
    D = op.descendant.two_group
    R = _solution_table(op.Q.arrows, op.action.phi, op.B, D.arrows)
    R0 = _solution_table(op.Q.objects, op.action.phi0, op.B0, D.objects)
    return CatYBSolution(SetYBMap(op.Q.n, frozen(R)), SetYBMap(op.Q.n0, frozen(R0)))

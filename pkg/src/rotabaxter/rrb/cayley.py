"""Factorization of a 2-group through a Rota-Baxter operator.

For a Rota-Baxter operator ``B`` (adjoint action) put ``B+ p = p . B p``.
The images and kernels of ``B`` and ``B+`` give sub-2-groups
``P+ = Im B+``, ``P- = Im B``, ``K+ = Ker B`` and ``K- = Ker B+``.
The Cayley transform sends the coset of ``B p`` in ``P-/K-`` to the coset of
``B+ p`` in ``P+/K+``; every ``p`` then factors uniquely as
``p = p+ . (p-)^-1`` with ``(p+, p-)`` in the graph of the transform.
Each of these claims is checked, and a failure raises ``InvariantViolation``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import AlgebraError, InvariantViolation
from ..fingroup import first_index, frozen
from ..twogroup import (
    QuotientTwoGroup,
    SubTwoGroup,
    TwoGroupMorphism,
    direct_product_two_group,
    groupoid_morphism_failure,
    quotient_two_group,
    sub_two_group,
)
from .two import RRB2GroupOp, plus_maps, require_adjoint


@dataclass(frozen=True, eq=False)
class CayleyFactorization:
    op: RRB2GroupOp
    plus: SubTwoGroup
    minus: SubTwoGroup
    kernel_plus: SubTwoGroup
    kernel_minus: SubTwoGroup
    quotient_plus: QuotientTwoGroup
    quotient_minus: QuotientTwoGroup
    transform: TwoGroupMorphism
    graph: SubTwoGroup
    sigma: TwoGroupMorphism
    factors: np.ndarray
    factors0: np.ndarray

    def factorize(self, p: int) -> tuple[int, int]:
        """``(p+, p-)`` with ``p = p+ . (p-)^-1``."""
        return int(self.factors[p, 0]), int(self.factors[p, 1])

    def factorize_object(self, x: int) -> tuple[int, int]:
        return int(self.factors0[x, 0]), int(self.factors0[x, 1])


def _guard(lemma: str, build):
    try:
        return build()
    except AlgebraError as exc:
        raise InvariantViolation(f"{lemma}: {exc}", exc.witness) from exc


def _positions(sub: SubTwoGroup, arrows, objects) -> tuple[np.ndarray, np.ndarray]:
    pa = np.full(sub.parent.n, -1, dtype=np.int64)
    pa[sub.arrows.elements] = np.arange(sub.arrows.elements.size)
    po = np.full(sub.parent.n0, -1, dtype=np.int64)
    po[sub.objects.elements] = np.arange(sub.objects.elements.size)
    return pa[np.asarray(arrows)], po[np.asarray(objects)]


def _coset_map(domain, codomain, name) -> np.ndarray:
    """Map induced on cosets; ``domain`` and ``codomain`` list coset indices per element."""
    size = int(domain.max()) + 1
    out = np.full(size, -1, dtype=np.int64)
    out[domain] = codomain
    hit = first_index(out[domain] != codomain)
    if hit is not None:
        raise InvariantViolation(f"Cayley transform on {name} is not well defined", hit)
    return out


def cayley_factorization(op: RRB2GroupOp) -> CayleyFactorization:
    require_adjoint(op)
    P = op.P
    B, B0 = op.B, op.B0
    Bp, Bp0 = plus_maps(op)
    e, e0 = P.arrows.identity, P.objects.identity

    def sub(name, arrows, objects):
        return _guard(f"{name} is a sub-2-group",
                      lambda: sub_two_group(P, np.unique(arrows), np.unique(objects)))

    plus = sub("Im B+", Bp, Bp0)
    minus = sub("Im B", B, B0)
    kplus = sub("Ker B", np.flatnonzero(B == e), np.flatnonzero(B0 == e0))
    kminus = sub("Ker B+", np.flatnonzero(Bp == e), np.flatnonzero(Bp0 == e0))

    def quot(name, big, small):
        arrows, objects = _positions(big, small.arrows.elements, small.objects.elements)
        if (arrows < 0).any() or (objects < 0).any():
            raise InvariantViolation(f"{name} is not contained in its ambient image")
        return _guard(f"{name} is a normal sub-2-group",
                      lambda: quotient_two_group(big.two_group, arrows, objects))

    qplus = quot("Ker B", plus, kplus)
    qminus = quot("Ker B+", minus, kminus)

    # cosets of B p and B+ p for every p
    pm, pm0 = _positions(minus, B, B0)
    pp, pp0 = _positions(plus, Bp, Bp0)
    cm, cm0 = qminus.arrows.projection[pm], qminus.objects.projection[pm0]
    cp, cp0 = qplus.arrows.projection[pp], qplus.objects.projection[pp0]
    theta = _coset_map(cm, cp, "arrows")
    theta0 = _coset_map(cm0, cp0, "objects")
    transform = _guard("Cayley transform is a 2-group isomorphism",
                       lambda: TwoGroupMorphism(qminus.two_group, qplus.two_group, theta, theta0,
                                                "Theta").require_isomorphism())

    # graph of the transform inside P x P
    PP = direct_product_two_group(P, P)

    def graph_elements(sub_p, sub_m, q_p, q_m, th, n):
        a, b = sub_p.elements, sub_m.elements
        keep = th[q_m.projection][None, :] == q_p.projection[:, None]
        i, j = np.nonzero(keep)
        return a[i] * n + b[j]

    ga = graph_elements(plus.arrows, minus.arrows, qplus.arrows, qminus.arrows, theta, P.n)
    go = graph_elements(plus.objects, minus.objects, qplus.objects, qminus.objects, theta0, P.n0)
    graph = _guard("graph of the Cayley transform is a sub-2-group", lambda: sub_two_group(PP, ga, go))

    sig = Bp * P.n + B
    sig0 = Bp0 * P.n0 + B0
    pos, pos0 = _positions(graph, sig, sig0)
    if (pos < 0).any() or (pos0 < 0).any():
        raise InvariantViolation("(B+ p, B p) leaves the graph of the Cayley transform")
    D = op.descendant.two_group
    sigma = _guard("sigma is a 2-group isomorphism onto the graph",
                   lambda: TwoGroupMorphism(D, graph.two_group, pos, pos0, "sigma").require_isomorphism())
    failure = groupoid_morphism_failure(P, PP, sig, sig0)
    if failure is not None:
        raise InvariantViolation(f"factor map is not a groupoid morphism: {failure[0]}", failure[1])

    _check_unique(P.arrows, ga // P.n, ga % P.n, Bp, B, "arrows")
    _check_unique(P.objects, go // P.n0, go % P.n0, Bp0, B0, "objects")

    return CayleyFactorization(op, plus, minus, kplus, kminus, qplus, qminus, transform, graph,
                               sigma, frozen(np.stack([Bp, B], axis=1)),
                               frozen(np.stack([Bp0, B0], axis=1)))


def _check_unique(G, a, b, Bp, B, name) -> None:
    """Every element is ``a . b^-1`` for exactly one graph pair, namely ``(B+ p, B p)``."""
    prod = G.table[a, G.inverses[b]]
    counts = np.bincount(prod, minlength=G.order)
    hit = first_index(counts != 1)
    if hit is not None:
        raise InvariantViolation(f"factorization of {name} is not unique", hit)
    hit = first_index(G.table[Bp, G.inverses[B]] != np.arange(G.order))
    if hit is not None:
        raise InvariantViolation(f"p != B+ p . (B p)^-1 on {name}", hit)
    # the unique pair must be (B+ p, B p)
    owner_a = np.empty(G.order, dtype=np.int64)
    owner_b = np.empty(G.order, dtype=np.int64)
    owner_a[prod], owner_b[prod] = a, b
    hit = first_index((owner_a != Bp) | (owner_b != B))
    if hit is not None:
        raise InvariantViolation(f"factorization of {name} differs from (B+ p, B p)", hit)


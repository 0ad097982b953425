"""Finite 2-groups: group objects in groupoids.

A 2-group is stored as a group of arrows, a group of objects and the three
structure homomorphisms ``src, tgt: arrows -> objects`` and
``unit: objects -> arrows``.  Groupoid composition is not stored; it is
derived from the group law as ``p*p' = p . unit(src p)^-1 . p'`` for
``src p = tgt p'`` and then checked against the groupoid axioms.

Given that derivation, the interchange law is equivalent to the kernels of
``src`` and ``tgt`` commuting elementwise, which is how it is tested.  A
failing commutator ``ab != ba`` with ``a in ker src`` and ``b in ker tgt``
yields the quadruple ``(p, p', q, q') = (e, b, a, e)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    CompositionActionFailure,
    GroupoidAxiomFailure,
    InterchangeFailure,
    InvariantViolation,
    NotBijective,
    NotGroupoidMorphism,
    NotSubTwoGroup,
)
from .fingroup import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    Quotient,
    Subgroup,
    conjugation_action,
    direct_product,
    first_index,
    frozen,
    quotient,
    semidirect_product,
    subgroup,
    trivial_action,
    trivial_group,
)


class TwoGroup:
    """A validated finite 2-group ``arrows ⇉ objects``."""

    def __init__(self, arrows: FiniteGroup, objects: FiniteGroup, src, tgt, unit):
        s = GroupHom(arrows, objects, src, "src").map
        t = GroupHom(arrows, objects, tgt, "tgt").map
        i = GroupHom(objects, arrows, unit, "unit").map
        ar0 = np.arange(objects.order)
        hit = first_index(s[i] != ar0)
        if hit is not None:
            raise GroupoidAxiomFailure("src(unit x) = x", hit)
        hit = first_index(t[i] != ar0)
        if hit is not None:
            raise GroupoidAxiomFailure("tgt(unit x) = x", hit)
        self.arrows, self.objects = arrows, objects
        self.src, self.tgt, self.unit = s, t, i
        self._check_groupoid()
        self._check_interchange()

    # -- structure -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.arrows.order

    @property
    def n0(self) -> int:
        return self.objects.order

    @cached_property
    def fibers_tgt(self) -> np.ndarray:
        """``fibers_tgt[x]`` lists the arrows with target ``x`` in increasing order."""
        order = np.argsort(self.tgt, kind="stable")
        return frozen(order.reshape(self.n0, self.n // self.n0))

    @cached_property
    def composable(self) -> tuple[np.ndarray, np.ndarray]:
        """All composable pairs ``(p, p')`` with ``src p = tgt p'``, sorted."""
        m = self.n // self.n0
        first = np.repeat(np.arange(self.n), m)
        second = self.fibers_tgt[self.src].reshape(-1)
        return frozen(first), frozen(second)

    def compose_many(self, a, b) -> np.ndarray:
        """Composites of composable arrays ``a`` and ``b`` (not rechecked)."""
        t = self.arrows.table
        return t[t[a, self.arrows.inverses[self.unit[self.src[a]]]], b]

    def compose(self, p: int, q: int) -> int:
        if self.src[p] != self.tgt[q]:
            raise ValueError(f"arrows {p} and {q} are not composable")
        return int(self.compose_many(p, q))

    @cached_property
    def groupoid_inverse(self) -> np.ndarray:
        """``unit(src p) . p^-1 . unit(tgt p)``."""
        t, inv = self.arrows.table, self.arrows.inverses
        return frozen(t[t[self.unit[self.src], inv], self.unit[self.tgt]])

    @cached_property
    def kernel_src(self) -> Subgroup:
        return subgroup(self.arrows, np.flatnonzero(self.src == self.objects.identity))

    @cached_property
    def kernel_tgt(self) -> Subgroup:
        return subgroup(self.arrows, np.flatnonzero(self.tgt == self.objects.identity))

    @cached_property
    def composable_generators(self) -> list[tuple[int, int]]:
        """Generators of the group of composable pairs under componentwise product.

        Every composable pair factors as ``(k, e) . (unit(tgt p'), p')`` with
        ``k`` in ``ker src``.
        """
        e = self.arrows.identity
        ks = self.kernel_src
        gens = [(int(ks.elements[k]), e) for k in ks.group.generators]
        gens += [(int(self.unit[self.tgt[g]]), g) for g in self.arrows.generators]
        return gens

    @cached_property
    def crossed_module(self):
        from .xmod import two_group_to_xmod
        return two_group_to_xmod(self)

    def __repr__(self) -> str:
        return f"TwoGroup({self.n} ⇉ {self.n0})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, TwoGroup) and self.arrows == other.arrows
                and self.objects == other.objects and np.array_equal(self.src, other.src)
                and np.array_equal(self.tgt, other.tgt) and np.array_equal(self.unit, other.unit))

    def __hash__(self) -> int:
        return hash((self.arrows, self.objects, self.src.tobytes(), self.tgt.tobytes()))

    # -- validation ------------------------------------------------------

    def _check_groupoid(self) -> None:
        p, q = self.composable
        pq = self.compose_many(p, q)
        s, t, i = self.src, self.tgt, self.unit
        for name, bad in (("src(p*q) = src q", s[pq] != s[q]),
                          ("tgt(p*q) = tgt p", t[pq] != t[p])):
            hit = first_index(bad)
            if hit is not None:
                raise GroupoidAxiomFailure(name, (int(p[hit[0]]), int(q[hit[0]])))
        ar = np.arange(self.n)
        for name, bad in (("unit(tgt p)*p = p", self.compose_many(i[t], ar) != ar),
                          ("p*unit(src p) = p", self.compose_many(ar, i[s]) != ar)):
            hit = first_index(bad)
            if hit is not None:
                raise GroupoidAxiomFailure(name, hit)
        g = self.groupoid_inverse
        for name, bad in (("p*p^-1 = unit(tgt p)", self.compose_many(ar, g) != i[t]),
                          ("p^-1*p = unit(src p)", self.compose_many(g, ar) != i[s])):
            hit = first_index(bad)
            if hit is not None:
                raise GroupoidAxiomFailure(name, hit)
        # associativity on composable triples (p, q, r)
        m = self.n // self.n0
        r = self.fibers_tgt[s[q]]
        left = self.compose_many(np.repeat(pq, m), r.reshape(-1))
        right = self.compose_many(np.repeat(p, m), self.compose_many(np.repeat(q, m), r.reshape(-1)))
        hit = first_index(left != right)
        if hit is not None:
            k = hit[0]
            raise GroupoidAxiomFailure("(p*q)*r = p*(q*r)", (int(p[k // m]), int(q[k // m]), int(r.reshape(-1)[k])))

    def _check_interchange(self) -> None:
        a = self.kernel_src.elements
        b = self.kernel_tgt.elements
        t = self.arrows.table
        hit = first_index(t[a[:, None], b[None, :]] != t[b[None, :], a[:, None]])
        if hit is not None:
            e = self.arrows.identity
            raise InterchangeFailure("(p.q)*(p'.q') != (p*p').(q*q')",
                                     (e, int(b[hit[1]]), int(a[hit[0]]), e))


# ----------------------------------------------------------------------------
# morphisms

def groupoid_morphism_failure(dom: TwoGroup, cod: TwoGroup, f, f0) -> tuple[str, tuple] | None:
    """First violated functor condition for the pair of maps ``(f, f0)``."""
    f, f0 = np.asarray(f), np.asarray(f0)
    for name, bad in (("src o f = f0 o src", cod.src[f] != f0[dom.src]),
                      ("tgt o f = f0 o tgt", cod.tgt[f] != f0[dom.tgt])):
        hit = first_index(bad)
        if hit is not None:
            return name, hit
    hit = first_index(f[dom.unit] != cod.unit[f0])
    if hit is not None:
        return "f o unit = unit o f0", hit
    p, q = dom.composable
    hit = first_index(f[dom.compose_many(p, q)] != cod.compose_many(f[p], f[q]))
    if hit is not None:
        return "f(p*q) = f(p)*f(q)", (int(p[hit[0]]), int(q[hit[0]]))
    return None


class TwoGroupMorphism:
    """A pair of homomorphisms that is also a functor."""

    def __init__(self, dom: TwoGroup, cod: TwoGroup, f, f0, name: str = "f"):
        self.f = GroupHom(dom.arrows, cod.arrows, f, name)
        self.f0 = GroupHom(dom.objects, cod.objects, f0, name + "0")
        failure = groupoid_morphism_failure(dom, cod, self.f.map, self.f0.map)
        if failure is not None:
            raise NotGroupoidMorphism(*failure)
        self.dom, self.cod = dom, cod

    @property
    def is_bijective(self) -> bool:
        return self.f.is_bijective and self.f0.is_bijective

    def require_isomorphism(self) -> "TwoGroupMorphism":
        if not self.f.is_bijective:
            raise NotBijective(self.f.name)
        if not self.f0.is_bijective:
            raise NotBijective(self.f0.name)
        return self


# ----------------------------------------------------------------------------
# actions

class TwoGroupAction:
    """An action of the 2-group ``actor`` on ``target`` by automorphisms.

    ``phi`` acts on arrows and ``phi0`` on objects; together they must form
    a groupoid morphism ``actor x target -> target``.  The composition
    condition is checked on generators of the groups of composable pairs on
    both sides, which is exact: for fixed composable ``(p, p')`` both sides are
    homomorphisms in ``(q, q')``, and the set of good ``(p, p')`` is a subgroup.
    """

    def __init__(self, actor: TwoGroup, target: TwoGroup, phi, phi0):
        if not isinstance(phi, GroupAction):
            phi = GroupAction(actor.arrows, target.arrows, phi)
        if not isinstance(phi0, GroupAction):
            phi0 = GroupAction(actor.objects, target.objects, phi0)
        if phi.actor != actor.arrows or phi.target != target.arrows:
            raise NotGroupoidMorphism("arrow action does not match the 2-groups")
        if phi0.actor != actor.objects or phi0.target != target.objects:
            raise NotGroupoidMorphism("object action does not match the 2-groups")
        f, f0 = phi.perms, phi0.perms
        P, Q = actor, target
        for p in P.arrows.generators:
            for name, qmap, pmap in (("src", Q.src, P.src), ("tgt", Q.tgt, P.tgt)):
                hit = first_index(qmap[f[p]] != f0[pmap[p]][qmap])
                if hit is not None:
                    raise NotGroupoidMorphism(f"{name}(phi(p)q) = phi0({name} p)({name} q)", (p, hit[0]))
        for x in P.objects.generators:
            hit = first_index(f[P.unit[x]][Q.unit] != Q.unit[f0[x]])
            if hit is not None:
                raise NotGroupoidMorphism("phi(unit x)(unit y) = unit(phi0(x)y)", (x, hit[0]))
        for p, p2 in P.composable_generators:
            pp = P.compose(p, p2)
            for q, q2 in Q.composable_generators:
                lhs = f[pp, Q.compose(q, q2)]
                rhs = Q.compose(int(f[p, q]), int(f[p2, q2]))
                if lhs != rhs:
                    raise CompositionActionFailure("phi(p*p')(q*q') != phi(p)q * phi(p')q'", (p, p2, q, q2))
        self.actor, self.target = actor, target
        self.phi, self.phi0 = phi, phi0

    def __repr__(self) -> str:
        return f"TwoGroupAction({self.actor} on {self.target})"

    @cached_property
    def is_adjoint(self) -> bool:
        P = self.actor
        return (P == self.target and np.array_equal(self.phi.perms, P.arrows.conjugation)
                and np.array_equal(self.phi0.perms, P.objects.conjugation))

    @cached_property
    def semidirect(self) -> TwoGroup:
        return semidirect_two_group(self)

    @cached_property
    def semidirect_adjoint(self) -> "TwoGroupAction":
        return adjoint_action(self.semidirect)


def adjoint_action(P: TwoGroup) -> TwoGroupAction:
    return TwoGroupAction(P, P, conjugation_action(P.arrows), conjugation_action(P.objects))


def trivial_two_group_action(actor: TwoGroup, target: TwoGroup) -> TwoGroupAction:
    return TwoGroupAction(actor, target, trivial_action(actor.arrows, target.arrows),
                          trivial_action(actor.objects, target.objects))


def semidirect_two_group(act: TwoGroupAction) -> TwoGroup:
    """``Q x| P ⇉ Q0 x| P0``; the pair ``(q, p)`` sits at ``q*|P| + p``."""
    P, Q = act.actor, act.target
    arrows = semidirect_product(Q.arrows, P.arrows, act.phi)
    objects = semidirect_product(Q.objects, P.objects, act.phi0)
    a = np.arange(arrows.order)
    q, p = a // P.n, a % P.n
    x = np.arange(objects.order)
    q0, p0 = x // P.n0, x % P.n0
    S = TwoGroup(arrows, objects,
                 Q.src[q] * P.n0 + P.src[p],
                 Q.tgt[q] * P.n0 + P.tgt[p],
                 Q.unit[q0] * P.n + P.unit[p0])
    u, v = S.composable
    comp = Q.compose_many(u // P.n, v // P.n) * P.n + P.compose_many(u % P.n, v % P.n)
    hit = first_index(S.compose_many(u, v) != comp)
    if hit is not None:
        raise InvariantViolation("semidirect composition is not componentwise",
                                 (int(u[hit[0]]), int(v[hit[0]])))
    return S


# ----------------------------------------------------------------------------
# constructions

def discrete_two_group(G: FiniteGroup) -> TwoGroup:
    """``G ⇉ G`` with only identity arrows."""
    ar = np.arange(G.order)
    return TwoGroup(G, G, ar, ar, ar)


def one_object_two_group(A: FiniteGroup) -> TwoGroup:
    """``A ⇉ 1``; valid exactly when ``A`` is abelian."""
    T = trivial_group()
    z = np.zeros(A.order, dtype=np.int64)
    return TwoGroup(A, T, z, z, [A.identity])


def pair_two_group(G: FiniteGroup) -> TwoGroup:
    """``G x| G ⇉ G`` with ``(p,l)(p',l') = (p l p' l^-1, l l')``.

    Source is ``l``, target is ``p l``; ``(p, p'l') * (p', l') = (p p', l')``.
    """
    arrows = semidirect_product(G, G, conjugation_action(G))
    a = np.arange(arrows.order)
    p, l = a // G.order, a % G.order
    unit = G.identity * G.order + np.arange(G.order)
    return TwoGroup(arrows, G, l, G.table[p, l], unit)


def direct_product_two_group(P: TwoGroup, Q: TwoGroup) -> TwoGroup:
    """``P x Q``; the pair ``(p, q)`` sits at ``p*|Q| + q``."""
    arrows = direct_product(P.arrows, Q.arrows)
    objects = direct_product(P.objects, Q.objects)
    a = np.arange(arrows.order)
    p, q = a // Q.n, a % Q.n
    x = np.arange(objects.order)
    p0, q0 = x // Q.n0, x % Q.n0
    return TwoGroup(arrows, objects, P.src[p] * Q.n0 + Q.src[q], P.tgt[p] * Q.n0 + Q.tgt[q],
                    P.unit[p0] * Q.n + Q.unit[q0])


@dataclass(frozen=True, eq=False)
class SubTwoGroup:
    parent: TwoGroup
    arrows: Subgroup
    objects: Subgroup
    two_group: TwoGroup


def sub_two_group(P: TwoGroup, arrows, objects) -> SubTwoGroup:
    """Restrict ``P`` to a subgroup of arrows and a subgroup of objects."""
    sa = subgroup(P.arrows, arrows)
    so = subgroup(P.objects, objects)
    pos0 = np.full(P.n0, -1, dtype=np.int64)
    pos0[so.elements] = np.arange(so.elements.size)
    pos = np.full(P.n, -1, dtype=np.int64)
    pos[sa.elements] = np.arange(sa.elements.size)
    for name, m in (("src", P.src), ("tgt", P.tgt)):
        img = pos0[m[sa.elements]]
        hit = first_index(img < 0)
        if hit is not None:
            raise NotSubTwoGroup(f"{name} leaves the object subgroup", (int(sa.elements[hit[0]]),))
    img = pos[P.unit[so.elements]]
    hit = first_index(img < 0)
    if hit is not None:
        raise NotSubTwoGroup("unit leaves the arrow subgroup", (int(so.elements[hit[0]]),))
    T = TwoGroup(sa.group, so.group, pos0[P.src[sa.elements]], pos0[P.tgt[sa.elements]], img)
    return SubTwoGroup(P, sa, so, T)


@dataclass(frozen=True, eq=False)
class QuotientTwoGroup:
    parent: TwoGroup
    arrows: Quotient
    objects: Quotient
    two_group: TwoGroup


def quotient_two_group(P: TwoGroup, arrows, objects) -> QuotientTwoGroup:
    """Quotient by normal subgroups of arrows and objects forming a sub-2-group."""
    qa = quotient(P.arrows, arrows)
    qo = quotient(P.objects, objects)
    maps = []
    for name, m in (("src", P.src), ("tgt", P.tgt)):
        induced = qo.projection[m[qa.representatives]]
        hit = first_index(induced[qa.projection] != qo.projection[m])
        if hit is not None:
            raise NotSubTwoGroup(f"{name} does not descend to the quotient", hit)
        maps.append(induced)
    unit = qa.projection[P.unit[qo.representatives]]
    hit = first_index(unit[qo.projection] != qa.projection[P.unit])
    if hit is not None:
        raise NotSubTwoGroup("unit does not descend to the quotient", hit)
    return QuotientTwoGroup(P, qa, qo, TwoGroup(qa.group, qo.group, maps[0], maps[1], unit))


def two_group_automorphisms(P: TwoGroup) -> list[tuple[np.ndarray, np.ndarray]]:
    """All 2-group automorphisms ``(f, f0)``, sorted by ``f``."""
    from .fingroup import automorphisms

    found = []
    for f in automorphisms(P.arrows):
        f0 = P.src[f[P.unit]]
        if groupoid_morphism_failure(P, P, f, f0) is None and len(set(f0.tolist())) == P.n0:
            found.append((f, frozen(f0)))
    return found

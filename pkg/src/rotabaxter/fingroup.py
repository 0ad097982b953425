"""Finite groups as dense Cayley tables, with homomorphisms and actions.

Elements are the integers ``0..n-1``.  The identity is found from the table
rather than assumed to be ``0``.  Every constructor validates eagerly, so an
instance of :class:`FiniteGroup`, :class:`GroupHom` or :class:`GroupAction`
always satisfies its axioms.

Checks that would naively range over all pairs of elements are reduced to
pairs ``(x, s)`` with ``s`` in a generating set.  For associativity this is
Light's test; for homomorphisms and actions it is induction on word length.
Both reductions are exact, and a failure found this way is a genuine witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ActionMismatch,
    GroupAxiomError,
    NoIdentity,
    NoInverse,
    NotAction,
    NotAssociative,
    NotBijective,
    NotClosed,
    NotHom,
    NotNormal,
    NotSubgroup,
)


def frozen(values, dtype=np.int64) -> np.ndarray:
    """Copy ``values`` into a read-only integer array."""
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def first_index(mask: np.ndarray) -> tuple[int, ...] | None:
    """Index of the first ``True`` entry of ``mask`` in C order."""
    flat = np.flatnonzero(mask)
    if flat.size == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(flat[0], mask.shape))


def scan_rows(n_rows: int, bad_rows, start: int = 4) -> tuple[int, ...] | None:
    """Evaluate ``bad_rows(rows)`` on growing blocks of rows.

    ``bad_rows`` returns a boolean array whose first axis matches ``rows``.
    Small blocks first keep random (usually failing) inputs cheap.
    """
    lo, size = 0, start
    while lo < n_rows:
        hi = min(n_rows, lo + size)
        hit = first_index(bad_rows(np.arange(lo, hi)))
        if hit is not None:
            return (hit[0] + lo,) + hit[1:]
        lo, size = hi, min(size * 4, 1024)
    return None


def _right_closure(rows: list[list[int]], start: int, gens: Sequence[int]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        row = rows[stack.pop()]
        for g in gens:
            y = row[g]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _greedy_generators(rows: list[list[int]], identity: int, candidates: Iterable[int]) -> list[int]:
    n = len(rows)
    gens: list[int] = []
    span = {identity}
    for c in candidates:
        if len(span) == n:
            break
        if c in span:
            continue
        gens.append(c)
        span = _right_closure(rows, identity, gens)
    return gens


class FiniteGroup:
    """A finite group given by its Cayley table ``table[a, b] = a*b``."""

    def __init__(self, table, labels: Sequence[str] | None = None):
        t = np.asarray(table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupAxiomError("Cayley table must be a non-empty square array")
        if t.dtype.kind not in "iu":
            raise GroupAxiomError("Cayley table entries must be integers")
        n = t.shape[0]
        hit = first_index((t < 0) | (t >= n))
        if hit is not None:
            raise NotClosed("product leaves the carrier", hit)
        t = frozen(t)
        ar = np.arange(n)
        ids = np.flatnonzero((t == ar).all(axis=1) & (t.T == ar).all(axis=1))
        if ids.size == 0:
            raise NoIdentity("no two-sided identity")
        e = int(ids[0])
        both = (t == e) & (t.T == e)
        has = both.any(axis=1)
        if not has.all():
            raise NoInverse("element has no two-sided inverse", (int(np.argmin(has)),))
        rows = t.tolist()
        # Light's test: associativity on (x, g, y) for g in a generating set
        for g in _greedy_generators(rows, e, range(n)):
            hit = first_index(t[t[:, g], :] != t[:, t[g, :]])
            if hit is not None:
                raise NotAssociative("(x*y)*z != x*(y*z)", (hit[0], g, hit[1]))
        self.table = t
        self.order = n
        self.identity = e
        self.inverses = frozen(both.argmax(axis=1))
        if labels is not None and len(labels) != n:
            raise GroupAxiomError("label count does not match the order")
        self.labels = tuple(str(x) for x in labels) if labels is not None else None

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __len__(self) -> int:
        return self.order

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested lists, for fast scalar access in Python loops."""
        return self.table.tolist()

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def prod(self, *elems: int) -> int:
        acc = self.identity
        for x in elems:
            acc = self.rows[acc][x]
        return acc

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[g, h] = g h g^-1``."""
        t = self.table
        return frozen(t[t, self.inverses[:, None]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n, e = self.order, self.identity
        ar = np.arange(n)
        power = ar.copy()
        orders = np.zeros(n, dtype=np.int64)
        for k in range(1, n + 1):
            orders[(power == e) & (orders == 0)] = k
            if orders.all():
                break
            power = self.table[power, ar]
        return frozen(orders)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        order = sorted(range(self.order), key=lambda x: (-int(self.element_orders[x]), x))
        return tuple(_greedy_generators(self.rows, self.identity, order))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


# ----------------------------------------------------------------------------
# constructors

def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], labels=["e"])


def cyclic(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n)


def _cycle_label(perm: Sequence[int]) -> str:
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = perm[j]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def permutation_group(perms: Iterable[Sequence[int]]) -> FiniteGroup:
    """Group of permutations closed under composition, ``(s*t)(i) = s(t(i))``.

    Elements are indexed in lexicographic order, so the identity comes first.
    """
    elems = sorted(set(tuple(p) for p in perms))
    index = {p: k for k, p in enumerate(elems)}
    try:
        table = [[index[tuple(s[i] for i in t)] for t in elems] for s in elems]
    except KeyError as exc:
        raise NotClosed("permutations are not closed under composition") from exc
    return FiniteGroup(table, labels=[_cycle_label(p) for p in elems])


def generated_permutation_group(gens: Sequence[Sequence[int]]) -> FiniteGroup:
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    stack = [ident]
    while stack:
        p = stack.pop()
        for g in gens:
            q = tuple(p[g[i]] for i in range(n))
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return permutation_group(seen)


def symmetric(n: int) -> FiniteGroup:
    return permutation_group(itertools.permutations(range(n)))


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of a regular ``n``-gon (order ``2n``)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return generated_permutation_group([rot, ref])


def quaternion() -> FiniteGroup:
    """The quaternion group of order 8."""
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    elems = [tuple(s * c for c in u) for u in units for s in (1, -1)]

    def hamilton(a, b):
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)

    index = {q: k for k, q in enumerate(elems)}
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup([[index[hamilton(a, b)] for b in elems] for a in elems], labels=names)


def semidirect_product(normal: FiniteGroup, acting: FiniteGroup, phi: "GroupAction") -> FiniteGroup:
    """``normal`` x| ``acting`` with ``(h,g)(h',g') = (h phi(g)h', gg')``.

    The pair ``(h, g)`` is stored at index ``h * |acting| + g``.
    """
    if phi.actor != acting or phi.target != normal:
        raise ActionMismatch("action does not match the factors")
    ng = acting.order
    a = np.arange(normal.order * ng)
    h, g = a // ng, a % ng
    hh = normal.table[h[:, None], phi.perms[g[:, None], h[None, :]]]
    gg = acting.table[g[:, None], g[None, :]]
    labels = None
    if normal.labels is not None or acting.labels is not None:
        labels = [f"({normal.label(x)},{acting.label(y)})" for x, y in zip(h, g)]
    return FiniteGroup(hh * ng + gg, labels=labels)


def direct_product(left: FiniteGroup, right: FiniteGroup) -> FiniteGroup:
    return semidirect_product(left, right, trivial_action(right, left))


def klein() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2))


# ----------------------------------------------------------------------------
# homomorphisms

class GroupHom:
    """A validated homomorphism ``domain -> codomain``."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, mapping, name: str = "map"):
        f = np.asarray(mapping)
        if f.shape != (domain.order,) or f.dtype.kind not in "iu":
            raise NotHom(name, message=f"{name} must be an integer array of length {domain.order}")
        hit = first_index((f < 0) | (f >= codomain.order))
        if hit is not None:
            raise NotHom(name, hit, message=f"{name} leaves the codomain")
        e = domain.identity
        if f[e] != codomain.identity:
            raise NotHom(name, (e, e))
        for s in domain.generators:
            hit = first_index(f[domain.table[:, s]] != codomain.table[f, f[s]])
            if hit is not None:
                raise NotHom(name, (hit[0], s))
        self.domain = domain
        self.codomain = codomain
        self.map = frozen(f)
        self.name = name

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def __repr__(self) -> str:
        return f"GroupHom({self.name}: {self.domain.order} -> {self.codomain.order})"

    @cached_property
    def image(self) -> np.ndarray:
        return frozen(np.unique(self.map))

    @cached_property
    def kernel(self) -> np.ndarray:
        return frozen(np.flatnonzero(self.map == self.codomain.identity))

    @property
    def is_injective(self) -> bool:
        return self.kernel.size == 1

    @property
    def is_surjective(self) -> bool:
        return self.image.size == self.codomain.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self o inner``."""
        return GroupHom(inner.domain, self.codomain, self.map[inner.map], f"{self.name}.{inner.name}")

    def inverse(self) -> "GroupHom":
        if not self.is_bijective:
            raise NotBijective(self.name)
        return GroupHom(self.codomain, self.domain, np.argsort(self.map), f"{self.name}^-1")


def is_hom(domain: FiniteGroup, codomain: FiniteGroup, mapping) -> bool:
    try:
        GroupHom(domain, codomain, mapping)
    except NotHom:
        return False
    return True


def _extend(domain: FiniteGroup, codomain: FiniteGroup, images: Sequence[int]) -> list[int] | None:
    """The homomorphism sending ``domain.generators`` to ``images``, if any."""
    rows, crows = domain.rows, codomain.rows
    gens = domain.generators
    f = [-1] * domain.order
    f[domain.identity] = codomain.identity
    stack = [domain.identity]
    while stack:
        x = stack.pop()
        fx = crows[f[x]]
        for s, v in zip(gens, images):
            y, w = rows[x][s], fx[v]
            if f[y] < 0:
                f[y] = w
                stack.append(y)
            elif f[y] != w:
                return None
    return f


def homomorphisms(domain: FiniteGroup, codomain: FiniteGroup) -> list[np.ndarray]:
    """All homomorphisms, in lexicographic order of their value arrays."""
    corders = codomain.element_orders
    choices = []
    for s in domain.generators:
        o = int(domain.element_orders[s])
        choices.append([v for v in range(codomain.order) if o % int(corders[v]) == 0])
    found = set()
    for images in itertools.product(*choices):
        f = _extend(domain, codomain, images)
        if f is not None:
            found.add(tuple(f))
    return [frozen(f) for f in sorted(found)]


def isomorphisms(domain: FiniteGroup, codomain: FiniteGroup, first_only: bool = False) -> list[np.ndarray]:
    if domain.order != codomain.order:
        return []
    if sorted(domain.element_orders.tolist()) != sorted(codomain.element_orders.tolist()):
        return []
    corders = codomain.element_orders
    choices = [[v for v in range(codomain.order) if corders[v] == domain.element_orders[s]]
               for s in domain.generators]
    found = set()
    for images in itertools.product(*choices):
        f = _extend(domain, codomain, images)
        if f is not None and len(set(f)) == domain.order:
            found.add(tuple(f))
            if first_only:
                break
    return [frozen(f) for f in sorted(found)]


def find_isomorphism(domain: FiniteGroup, codomain: FiniteGroup) -> np.ndarray | None:
    found = isomorphisms(domain, codomain, first_only=True)
    return found[0] if found else None


def automorphisms(group: FiniteGroup) -> list[np.ndarray]:
    """All automorphisms in lexicographic order; the identity map comes first."""
    return isomorphisms(group, group)


def automorphism_group(group: FiniteGroup) -> tuple[FiniteGroup, list[np.ndarray]]:
    """``Aut(group)`` with product ``a*b = a o b`` (apply ``b`` first)."""
    auts = automorphisms(group)
    index = {a.tobytes(): k for k, a in enumerate(auts)}
    table = [[index[a[b].tobytes()] for b in auts] for a in auts]
    return FiniteGroup(table), auts


# ----------------------------------------------------------------------------
# actions

class GroupAction:
    """Left action of ``actor`` on ``target`` by automorphisms.

    ``perms[g, h]`` is the image of ``h`` under ``g``.
    """

    def __init__(self, actor: FiniteGroup, target: FiniteGroup, perms):
        p = np.asarray(perms)
        if p.shape != (actor.order, target.order) or p.dtype.kind not in "iu":
            raise NotAction(f"action table must have shape {(actor.order, target.order)}")
        hit = first_index((p < 0) | (p >= target.order))
        if hit is not None:
            raise NotAction("action leaves the target", hit)
        ar = np.arange(target.order)
        hit = first_index(np.sort(p, axis=1) != ar)
        if hit is not None:
            raise NotAction("phi(g) is not a bijection", (hit[0],))
        hit = first_index(p[actor.identity] != ar)
        if hit is not None:
            raise NotAction("the identity does not act trivially", (actor.identity, hit[0]))
        for s in actor.generators:
            hit = first_index(p[actor.table[:, s]] != p[:, p[s]])
            if hit is not None:
                raise NotAction("phi(g s) != phi(g) phi(s)", (hit[0], s, hit[1]))
        tt = target.table
        for s in target.generators:
            hit = first_index(p[:, tt[:, s]] != tt[p, p[:, s][:, None]])
            if hit is not None:
                raise NotAction("phi(g) is not an automorphism", (hit[0], hit[1], s))
        self.actor = actor
        self.target = target
        self.perms = frozen(p)

    def __call__(self, g: int, h: int) -> int:
        return int(self.perms[g, h])

    def __repr__(self) -> str:
        return f"GroupAction({self.actor.order} on {self.target.order})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupAction) and self.actor == other.actor
                and self.target == other.target and np.array_equal(self.perms, other.perms))

    def __hash__(self) -> int:
        return hash(self.perms.tobytes())

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.perms.tolist()

    @cached_property
    def inverse_perms(self) -> np.ndarray:
        """``inverse_perms[g] = phi(g)^-1 = phi(g^-1)``."""
        return frozen(self.perms[self.actor.inverses])

    @property
    def is_trivial(self) -> bool:
        return bool((self.perms == np.arange(self.target.order)).all())

    def pullback(self, hom: GroupHom) -> "GroupAction":
        """The action ``g -> phi(hom(g))`` of ``hom.domain``."""
        return GroupAction(hom.domain, self.target, self.perms[hom.map])


def trivial_action(actor: FiniteGroup, target: FiniteGroup) -> GroupAction:
    perms = np.broadcast_to(np.arange(target.order), (actor.order, target.order))
    return GroupAction(actor, target, perms.copy())


def conjugation_action(group: FiniteGroup) -> GroupAction:
    return GroupAction(group, group, group.conjugation)


# ----------------------------------------------------------------------------
# subgroups and quotients

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    elements: np.ndarray
    group: FiniteGroup

    @cached_property
    def position(self) -> dict[int, int]:
        return {int(x): k for k, x in enumerate(self.elements)}

    @cached_property
    def is_normal(self) -> bool:
        return normality_witness(self.parent, self.elements) is None


@dataclass(frozen=True, eq=False)
class Quotient:
    parent: FiniteGroup
    normal: Subgroup
    group: FiniteGroup
    projection: np.ndarray
    representatives: np.ndarray


def subgroup(parent: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    elems = np.unique(np.asarray(list(elements), dtype=np.int64))
    if elems.size == 0 or elems[0] < 0 or elems[-1] >= parent.order:
        raise NotSubgroup("subset is empty or leaves the group")
    member = np.zeros(parent.order, dtype=bool)
    member[elems] = True
    prods = parent.table[elems[:, None], elems[None, :]]
    hit = first_index(~member[prods])
    if hit is not None:
        raise NotSubgroup("subset is not closed", (int(elems[hit[0]]), int(elems[hit[1]])))
    pos = np.full(parent.order, -1, dtype=np.int64)
    pos[elems] = np.arange(elems.size)
    labels = [parent.label(int(x)) for x in elems] if parent.labels is not None else None
    return Subgroup(parent, frozen(elems), FiniteGroup(pos[prods], labels=labels))


def normality_witness(parent: FiniteGroup, elements) -> tuple[int, int] | None:
    elems = np.asarray(elements, dtype=np.int64)
    member = np.zeros(parent.order, dtype=bool)
    member[elems] = True
    hit = first_index(~member[parent.conjugation[:, elems]])
    if hit is None:
        return None
    return (hit[0], int(elems[hit[1]]))


def quotient(parent: FiniteGroup, normal: Subgroup | Iterable[int]) -> Quotient:
    if not isinstance(normal, Subgroup):
        normal = subgroup(parent, normal)
    hit = normality_witness(parent, normal.elements)
    if hit is not None:
        raise NotNormal("subgroup is not normal", hit)
    proj = np.full(parent.order, -1, dtype=np.int64)
    reps = []
    for x in range(parent.order):
        if proj[x] < 0:
            proj[parent.table[x, normal.elements]] = len(reps)
            reps.append(x)
    reps = np.array(reps, dtype=np.int64)
    table = proj[parent.table[reps[:, None], reps[None, :]]]
    return Quotient(parent, normal, FiniteGroup(table), frozen(proj), frozen(reps))


def subgroup_and_quotient(parent: FiniteGroup, elements: Iterable[int],
                          want_quotient: bool = False) -> tuple[Subgroup, Quotient | None]:
    sub = subgroup(parent, elements)
    if not want_quotient:
        return sub, (quotient(parent, sub) if sub.is_normal else None)
    return sub, quotient(parent, sub)

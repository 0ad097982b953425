"""The shipped fixture corpus.

Group tables live in ``data/groups.json`` so every fixture is reproducible
offline; 2-groups, crossed modules and actions are assembled from them.
Fixture ids are plain strings such as ``"S3"``, ``"discrete-S3"``,
``"pair-S3"``, ``"Z2=>T"``, ``"inclusion-S3"`` or ``"Z2->T"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable

import numpy as np

from .fingroup import (
    FiniteGroup,
    GroupAction,
    cyclic,
    dihedral,
    direct_product,
    klein,
    quaternion,
    symmetric,
    trivial_group,
)
from .liealg import LieAlgebra, abelian_lie, affine_lie
from .twogroup import (
    TwoGroup,
    TwoGroupAction,
    adjoint_action,
    discrete_two_group,
    one_object_two_group,
    pair_two_group,
    trivial_two_group_action,
)
from .xmod import (
    CrossedModule,
    XModAction,
    abelian_xmod,
    adjoint_xmod_action,
    inclusion_xmod,
    trivial_xmod,
    trivial_xmod_action,
)

GROUP_BUILDERS: dict[str, Callable[[], FiniteGroup]] = {
    "T": trivial_group,
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "Z2xZ2": klein,
    "S3": lambda: symmetric(3),
    "Z5": lambda: cyclic(5),
    "Z6": lambda: cyclic(6),
    "Z8": lambda: cyclic(8),
    "Z2xZ4": lambda: direct_product(cyclic(2), cyclic(4)),
    "Z2xZ2xZ2": lambda: direct_product(klein(), cyclic(2)),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
}

# the core corpus; the extra groups above are used for exhaustive small-order sweeps
CORE_GROUPS = ("T", "Z2", "Z3", "Z4", "S3", "Z2xZ2")
SMALL_GROUPS = tuple(GROUP_BUILDERS)


def groups_payload() -> dict:
    out = {}
    for name, build in GROUP_BUILDERS.items():
        G = build()
        out[name] = {"order": G.order, "table": G.table.tolist()}
        if G.labels is not None:
            out[name]["labels"] = list(G.labels)
    return out


@lru_cache(maxsize=None)
def _group_data() -> dict:
    text = resources.files("rotabaxter").joinpath("data/groups.json").read_text(encoding="utf-8")
    return json.loads(text)


@lru_cache(maxsize=None)
def group(name: str) -> FiniteGroup:
    data = _group_data()
    if name not in data:
        raise KeyError(f"unknown group fixture {name!r}")
    entry = data[name]
    return FiniteGroup(entry["table"], entry.get("labels"))


@lru_cache(maxsize=None)
def two_group(name: str) -> TwoGroup:
    if name == "Z2=>T":
        return one_object_two_group(group("Z2"))
    kind, _, base = name.partition("-")
    if kind == "discrete":
        return discrete_two_group(group(base))
    if kind == "pair":
        return pair_two_group(group(base))
    if kind == "onepoint":
        return one_object_two_group(group(base))
    raise KeyError(f"unknown 2-group fixture {name!r}")


@lru_cache(maxsize=None)
def crossed_module(name: str) -> CrossedModule:
    if name == "Z2->T":
        return abelian_xmod(group("Z2"))
    kind, _, base = name.partition("-")
    if kind == "inclusion":
        return inclusion_xmod(group(base))
    if kind == "trivial":
        return trivial_xmod(group(base))
    if kind == "abelian":
        return abelian_xmod(group(base))
    raise KeyError(f"unknown crossed-module fixture {name!r}")


LIE_BUILDERS: dict[str, Callable[[], LieAlgebra]] = {
    "aff1": affine_lie,
    "abelian2": lambda: abelian_lie(2),
}


@lru_cache(maxsize=None)
def lie_algebra(name: str) -> LieAlgebra:
    return LIE_BUILDERS[name]()


# ----------------------------------------------------------------------------
# the corpus used by the theorem suite

def sign_action(G: FiniteGroup, A: FiniteGroup) -> GroupAction:
    """Odd permutations act on the abelian group ``A`` by inversion."""
    perms = []
    for g in range(G.order):
        odd = G.labels is not None and _is_odd(G.labels[g])
        perms.append(A.inverses if odd else np.arange(A.order))
    return GroupAction(G, A, perms)


def _is_odd(label: str) -> bool:
    cycles = [c for c in label.strip("()").split(")(") if c and c != "e"]
    return sum(len(c) - 1 for c in cycles) % 2 == 1


ACTIONS = ("adjoint", "trivial", "sign")


@dataclass(frozen=True)
class TwoGroupCase:
    """An action on the 2-group fixture ``target``; the actor defaults to the target."""
    target: str
    actor: str | None = None
    kind: str = "adjoint"

    @property
    def name(self) -> str:
        if self.kind == "adjoint":
            return f"{self.target} (adjoint)"
        return f"{self.actor} on {self.target} ({self.kind})"

    def action(self) -> TwoGroupAction:
        Q = two_group(self.target)
        if self.kind == "adjoint":
            return adjoint_action(Q)
        P = two_group(self.actor)
        if self.kind == "trivial":
            return trivial_two_group_action(P, Q)
        if self.kind == "sign":
            return TwoGroupAction(P, Q, sign_action(P.arrows, Q.arrows), sign_action(P.objects, Q.objects))
        raise KeyError(f"unknown action kind {self.kind!r}")


@dataclass(frozen=True)
class XModCase:
    target: str
    actor: str | None = None
    kind: str = "adjoint"

    @property
    def name(self) -> str:
        if self.kind == "adjoint":
            return f"{self.target} (adjoint)"
        return f"{self.actor} on {self.target} ({self.kind})"

    def action(self) -> XModAction:
        H = crossed_module(self.target)
        if self.kind == "adjoint":
            return adjoint_xmod_action(H)
        G = crossed_module(self.actor)
        if self.kind == "trivial":
            return trivial_xmod_action(G, H)
        if self.kind == "sign":
            # the actor's G0 acts on both levels of H through the sign
            return XModAction(G, H, np.full((G.g1.order, H.g0.order), H.g1.identity),
                              sign_action(G.g0, H.g1), sign_action(G.g0, H.g0))
        raise KeyError(f"unknown action kind {self.kind!r}")


TWO_GROUP_CASES: tuple[TwoGroupCase, ...] = (
    *(TwoGroupCase(f"discrete-{g}") for g in CORE_GROUPS),
    TwoGroupCase("Z2=>T"),
    TwoGroupCase("pair-Z2"),
    TwoGroupCase("pair-Z3"),
    TwoGroupCase("pair-S3"),
    TwoGroupCase("discrete-Z2", "discrete-Z2", "trivial"),
    TwoGroupCase("Z2=>T", "discrete-Z3", "trivial"),
    TwoGroupCase("discrete-Z3", "pair-Z2", "trivial"),
    TwoGroupCase("discrete-Z3", "discrete-S3", "sign"),
    TwoGroupCase("discrete-Z6", "discrete-S3", "sign"),
)

XMOD_CASES: tuple[XModCase, ...] = (
    *(XModCase(f"trivial-{g}") for g in CORE_GROUPS),
    XModCase("Z2->T"),
    *(XModCase(f"inclusion-{g}") for g in CORE_GROUPS),
    XModCase("inclusion-Z2", "inclusion-Z2", "trivial"),
    XModCase("Z2->T", "trivial-Z3", "trivial"),
    XModCase("trivial-Z3", "trivial-S3", "sign"),
    XModCase("inclusion-Z3", "trivial-S3", "sign"),
)

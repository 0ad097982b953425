"""JSON file formats.

Structures may be embedded objects or string references.  A reference is a
fixture id (``"S3"``, ``"pair-S3"``, ``"inclusion-S3"``, ``"aff1"``), an
action shorthand ``"adjoint:<fixture>"``, or a path to another JSON file,
resolved relative to the referring file.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from . import fixtures
from .errors import ParseError
from .fingroup import FiniteGroup, GroupAction, conjugation_action
from .liealg import LieAlgebra
from .rrb import RRB2GroupOp, RRBGroupOp, RRBXModOp
from .twogroup import TwoGroup, TwoGroupAction, adjoint_action
from .xhom import CrossedHom2Group, CrossedHomGroup, CrossedHomXMod
from .xmod import CrossedModule, XModAction, adjoint_xmod_action
from .ybe import CatYBSolution


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class Loader:
    """Resolves references relative to ``base`` and builds validated structures."""

    def __init__(self, base: str | Path = "."):
        self.base = Path(base)

    def _resolve(self, ref):
        if not isinstance(ref, str):
            return ref, self
        path = self.base / ref
        if path.suffix == ".json":
            return read_json(path), Loader(path.parent)
        return ref, self

    def _field(self, data: dict, key: str):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
        return data[key]

    def group(self, ref) -> FiniteGroup:
        data, sub = self._resolve(ref)
        if isinstance(data, str):
            try:
                return fixtures.group(data)
            except KeyError as exc:
                raise ParseError(str(exc)) from exc
        table = self._field(data, "table")
        if "order" in data and data["order"] != len(table):
            raise ParseError("order does not match the table")
        return FiniteGroup(np.asarray(table, dtype=np.int64), data.get("labels"))

    def group_action(self, ref) -> GroupAction:
        data, sub = self._resolve(ref)
        if isinstance(data, str):
            if data.startswith("adjoint:"):
                return conjugation_action(self.group(data.split(":", 1)[1]))
            raise ParseError(f"unknown action reference {data!r}")
        return GroupAction(sub.group(self._field(data, "actor")), sub.group(self._field(data, "target")),
                           np.asarray(self._field(data, "perms"), dtype=np.int64))

    def two_group(self, ref) -> TwoGroup:
        data, sub = self._resolve(ref)
        if isinstance(data, str):
            try:
                return fixtures.two_group(data)
            except KeyError as exc:
                raise ParseError(str(exc)) from exc
        return TwoGroup(sub.group(self._field(data, "arrow_group")), sub.group(self._field(data, "object_group")),
                        *(np.asarray(self._field(data, k), dtype=np.int64) for k in ("src", "tgt", "unit")))

    def two_group_action(self, ref) -> TwoGroupAction:
        data, sub = self._resolve(ref)
        if isinstance(data, str):
            if data.startswith("adjoint:"):
                return adjoint_action(self.two_group(data.split(":", 1)[1]))
            raise ParseError(f"unknown action reference {data!r}")
        obj = self._field(data, "object_level")
        return TwoGroupAction(sub.two_group(self._field(data, "actor")), sub.two_group(self._field(data, "target")),
                              np.asarray(self._field(data, "perms"), dtype=np.int64),
                              np.asarray(self._field(obj, "perms"), dtype=np.int64))

    def crossed_module(self, ref) -> CrossedModule:
        data, sub = self._resolve(ref)
        if isinstance(data, str):
            try:
                return fixtures.crossed_module(data)
            except KeyError as exc:
                raise ParseError(str(exc)) from exc
        return CrossedModule(sub.group(self._field(data, "g1")), sub.group(self._field(data, "g0")),
                             np.asarray(self._field(data, "mu"), dtype=np.int64),
                             np.asarray(self._field(data, "act"), dtype=np.int64))

    def xmod_action(self, ref) -> XModAction:
        data, sub = self._resolve(ref)
        if isinstance(data, str):
            if data.startswith("adjoint:"):
                return adjoint_xmod_action(self.crossed_module(data.split(":", 1)[1]))
            raise ParseError(f"unknown action reference {data!r}")
        return XModAction(sub.crossed_module(self._field(data, "G")), sub.crossed_module(self._field(data, "H")),
                          *(np.asarray(self._field(data, k), dtype=np.int64) for k in ("alpha", "beta1", "beta0")))

    def action(self, level: str, ref):
        return {"group": self.group_action, "two_group": self.two_group_action,
                "xmod": self.xmod_action}[level](ref)

    def lie_algebra(self, ref) -> LieAlgebra:
        data, sub = self._resolve(ref)
        if isinstance(data, str):
            try:
                return fixtures.lie_algebra(data)
            except KeyError as exc:
                raise ParseError(f"unknown Lie algebra {data!r}") from exc
        structure = self._field(data, "structure")
        return LieAlgebra([[[parse_fraction(c) for c in row] for row in plane] for plane in structure])

    def operator(self, ref):
        """An operator or crossed-homomorphism file."""
        data, sub = self._resolve(ref)
        level = self._field(data, "level")
        if level not in ("group", "two_group", "xmod"):
            raise ParseError(f"unknown level {level!r}")
        action = sub.action(level, self._field(data, "action"))
        arr = lambda k: np.asarray(self._field(data, k), dtype=np.int64)  # noqa: E731
        if data.get("kind", "operator") == "crossed_hom":
            if level == "group":
                return CrossedHomGroup(action, arr("D"))
            if level == "two_group":
                return CrossedHom2Group(action, arr("D"), arr("D0"))
            return CrossedHomXMod(action, arr("D1"), arr("D0"))
        if level == "group":
            return RRBGroupOp(action, arr("B"))
        if level == "two_group":
            return RRB2GroupOp(action, arr("B"), arr("B0"))
        return RRBXModOp(action, arr("B1"), arr("B0"))


def parse_fraction(value) -> Fraction:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise ParseError(f"cannot read {value!r} as a rational")


# ----------------------------------------------------------------------------
# serialization

def group_to_json(G: FiniteGroup) -> dict:
    out = {"order": G.order, "table": G.table.tolist()}
    if G.labels is not None:
        out["labels"] = list(G.labels)
    return out


def two_group_to_json(P: TwoGroup) -> dict:
    return {"arrow_group": group_to_json(P.arrows), "object_group": group_to_json(P.objects),
            "src": P.src.tolist(), "tgt": P.tgt.tolist(), "unit": P.unit.tolist()}


def xmod_to_json(X: CrossedModule) -> dict:
    return {"g1": group_to_json(X.g1), "g0": group_to_json(X.g0), "mu": X.mu.tolist(),
            "act": X.act.perms.tolist()}


def group_action_to_json(A: GroupAction) -> dict:
    return {"actor": group_to_json(A.actor), "target": group_to_json(A.target), "perms": A.perms.tolist()}


def two_group_action_to_json(A: TwoGroupAction) -> dict:
    return {"actor": two_group_to_json(A.actor), "target": two_group_to_json(A.target),
            "perms": A.phi.perms.tolist(), "object_level": {"perms": A.phi0.perms.tolist()}}


def xmod_action_to_json(A: XModAction) -> dict:
    return {"G": xmod_to_json(A.G), "H": xmod_to_json(A.H), "alpha": A.alpha.tolist(),
            "beta1": A.beta1.perms.tolist(), "beta0": A.beta0.perms.tolist()}


def action_to_json(A) -> dict:
    if isinstance(A, GroupAction):
        return group_action_to_json(A)
    if isinstance(A, TwoGroupAction):
        return two_group_action_to_json(A)
    return xmod_action_to_json(A)


def operator_to_json(op, action_ref=None) -> dict:
    if isinstance(op, RRBGroupOp):
        out = {"level": "group", "B": op.B.tolist()}
    elif isinstance(op, RRB2GroupOp):
        out = {"level": "two_group", "B": op.B.tolist(), "B0": op.B0.tolist()}
    elif isinstance(op, RRBXModOp):
        out = {"level": "xmod", "B1": op.B1.tolist(), "B0": op.B0.tolist()}
    elif isinstance(op, CrossedHomGroup):
        out = {"level": "group", "kind": "crossed_hom", "D": op.D.tolist()}
    elif isinstance(op, CrossedHom2Group):
        out = {"level": "two_group", "kind": "crossed_hom", "D": op.D.tolist(), "D0": op.D0.tolist()}
    elif isinstance(op, CrossedHomXMod):
        out = {"level": "xmod", "kind": "crossed_hom", "D1": op.D1.tolist(), "D0": op.D0.tolist()}
    else:
        raise TypeError(f"cannot serialize {type(op).__name__}")
    if action_ref is not None:
        out["action"] = action_ref
    return out


def detect_kind(data) -> str:
    """Guess what a parsed JSON document describes from its keys."""
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    if "kind" in data and data["kind"] in KINDS:
        return data["kind"]
    if "level" in data:
        return "crossed_hom" if data.get("kind") == "crossed_hom" else "operator"
    for key, kind in (("table", "group"), ("arrow_group", "two_group"), ("g1", "xmod"),
                      ("structure", "lie"), ("alpha", "xmod_action"), ("object_level", "two_group_action"),
                      ("perms", "group_action")):
        if key in data:
            return kind
    raise ParseError("cannot tell what this file describes")


KINDS = ("group", "two_group", "xmod", "group_action", "two_group_action", "xmod_action",
         "lie", "operator", "crossed_hom")


def solution_to_json(sol: CatYBSolution) -> dict:
    return {"n": sol.R.n, "R": sol.R.perm.tolist(), "n0": sol.R0.n, "R0": sol.R0.perm.tolist()}


def lie_to_json(g: LieAlgebra) -> dict:
    return {"dim": g.dim, "structure": [[[[c.numerator, c.denominator] for c in row] for row in plane]
                                        for plane in g.structure]}


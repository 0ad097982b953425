"""Run every structural theorem as an executable check over the fixture corpus.

Each fixture case is an independent work unit; results are assembled in
corpus order, so the report does not depend on the number of workers.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import fixtures
from .errors import AlgebraError
from .liealg import (
    adjoint_lie_action,
    adjoint_lie_xmod_action,
    identity,
    identity_lie_xmod,
    verify_rrb_lie,
    verify_rrb_lie_xmod,
    zeros,
)
from .rrb import (
    RRB2GroupOp,
    RRBGroupOp,
    RRBXModOp,
    bar_B,
    cayley_factorization,
    descendant_action,
    enumerate_rrb_two_group,
    enumerate_rrb_xmod,
    graph_failure,
    is_rota_baxter_action,
    hat_maps,
    plus_B,
    rb_group_to_rb_2groups,
    rb_on_descendant,
    rb_on_descendant_xmod,
    rrb_2group_to_xmod,
    rrb_two_group_failure,
    rrb_xmod_to_2group,
    twist_rrb,
)
from .search import DEFAULT_BUDGET
from .twogroup import TwoGroupAction, two_group_automorphisms
from .xhom import (
    derived_action,
    enumerate_crossed_homs,
    graph_check,
    hat_D,
    invert_correspondence,
    is_bijective_map,
)
from .xmod import XModAction, action_2group_from_xmod, action_xmod_from_2group, pi_map
from .ybe import build_RB, verify_cat_ybe


@dataclass(frozen=True)
class Check:
    theorem: str
    fixture: str
    passed: bool
    checked: int
    detail: str = ""


def case_seed(seed: int, name: str) -> int:
    return (seed * 1_000_003 + zlib.crc32(name.encode())) % 2**32


class _Collector:
    def __init__(self, fixture: str):
        self.fixture = fixture
        self.checks: list[Check] = []

    def run(self, theorem: str, items, body) -> None:
        """Apply ``body`` to every item; the first failure is recorded with its item."""
        count = 0
        for item in items:
            count += 1
            try:
                problem = body(item)
            except AlgebraError as exc:
                problem = f"{type(exc).__name__}: {exc}"
            if problem:
                self.checks.append(Check(theorem, self.fixture, False, count, f"{item!r}: {problem}"))
                return
        self.checks.append(Check(theorem, self.fixture, True, count))


# ----------------------------------------------------------------------------
# 2-group cases

def graph_conditions(action: TwoGroupAction, B, B0) -> tuple[bool, bool, bool]:
    """Operator test, graph closure, and the Rota-Baxter test for hat-B."""
    verified = rrb_two_group_failure(action, B, B0) is None
    closed = graph_failure(action, B, B0) is None
    hat, hat0 = hat_maps(action, B, B0)
    hat_ok = rrb_two_group_failure(action.semidirect_adjoint, hat, hat0) is None
    return verified, closed, hat_ok


def candidate_pairs(action: TwoGroupAction, ops: list[RRB2GroupOp], rng: np.random.Generator, count: int):
    """Seeded candidates cycling through four kinds: uniform random pairs,
    single-entry mutants of operators, operators, and the arrow map of one
    operator paired with the object map of another."""
    P, Q = action.actor, action.target
    out = []
    for k in range(count):
        mode = k % 4
        if mode == 0 or not ops:
            out.append((rng.integers(0, P.n, Q.n), rng.integers(0, P.n0, Q.n0)))
            continue
        op = ops[int(rng.integers(len(ops)))]
        B, B0 = op.B.copy(), op.B0.copy()
        if mode == 1:
            if rng.integers(Q.n + Q.n0) < Q.n or Q.n0 == 1:
                B[int(rng.integers(Q.n))] = int(rng.integers(P.n))
            else:
                B0[int(rng.integers(Q.n0))] = int(rng.integers(P.n0))
        elif mode == 3:
            B0 = ops[int(rng.integers(len(ops)))].B0.copy()
        out.append((B, B0))
    return out


def _agree(action):
    def body(pair):
        flags = graph_conditions(action, *pair)
        return None if len(set(flags)) == 1 else f"verify/graph/hat = {flags}"
    return body


def two_group_operator_theorems(action: TwoGroupAction, xkeys: set | None = None) -> list[tuple[str, Callable]]:
    """Per-operator checks; each body returns ``None`` or a description of the failure."""
    P, Q = action.actor, action.target
    piP, _ = pi_map(P)
    piQ, _ = pi_map(Q)

    def descendant(op):
        op.descendant
        descendant_action(op)
        if action.is_adjoint:
            rb_on_descendant(op)

    def bijection(op):
        x = rrb_2group_to_xmod(op)
        if xkeys is not None and x.key() not in xkeys:
            return "restriction is not among the crossed-module operators"
        back = rrb_xmod_to_2group(x)
        if not np.array_equal(piP[back.B], op.B[piQ]) or not np.array_equal(back.B0, op.B0):
            return "round trip differs after the pi identifications"
        return None

    def derived(op):
        if bar_B(bar_B(op)).key() != op.key():
            return "bar(bar B) != B"
        plus_B(op)
        return None

    def twist(op):
        for f, f0 in two_group_automorphisms(P):
            t = twist_rrb(op, f, f0, f, f0)
            if (op.B == P.arrows.inverses).all() and (t.B != op.B).any():
                return "twisting the inverse operator changed it"
        return None

    def inverse(op):
        if not (is_bijective_map(op.B, P.n) and is_bijective_map(op.B0, P.n0)):
            return None
        back = invert_correspondence(invert_correspondence(op))
        return None if back.key() == op.key() else "inverting twice does not return the operator"

    out = [
        ("graph: operators", lambda op: _agree(action)((op.B, op.B0))),
        ("descendant 2-group", descendant),
        ("bijection: round trip", bijection),
        ("Yang-Baxter solution", lambda op: verify_cat_ybe(build_RB(op), Q) and None),
    ]
    if action.is_adjoint:
        out += [
            ("bar-B and B+", derived),
            ("factorization", lambda op: cayley_factorization(op) and None),
            ("twist by automorphisms", twist),
        ]
    out.append(("inverse correspondence", inverse))
    return out


def xmod_operator_theorems(action: XModAction, two_keys: set | None = None) -> list[tuple[str, Callable]]:
    G = action.G

    def descendant(op):
        report = op.descendant.report
        if not report.ok:
            return f"(theta, tau) fails: {report.failures[0]}"
        if action.is_adjoint:
            rb_on_descendant_xmod(op)
        return None

    def bijection(op):
        t = rrb_xmod_to_2group(op)
        if two_keys is not None and t.key() not in two_keys:
            return "image is not among the 2-group operators"
        return None if rrb_2group_to_xmod(t).key() == op.key() else "round trip differs"

    def inverse(op):
        if not (is_bijective_map(op.B1, G.g1.order) and is_bijective_map(op.B0, G.g0.order)):
            return None
        back = invert_correspondence(invert_correspondence(op))
        return None if back.key() == op.key() else "inverting twice does not return the operator"

    return [("descendant crossed module", descendant), ("bijection: round trip", bijection),
            ("inverse correspondence", inverse)]


def run_two_group_case(case: fixtures.TwoGroupCase, seed: int = 0, samples: int = 30,
                       budget: int = DEFAULT_BUDGET) -> list[Check]:
    c = _Collector(case.name)
    action = case.action()
    P, Q = action.actor, action.target
    ops = enumerate_rrb_two_group(action, budget=budget)
    c.checks.append(Check("enumerate operators", case.name, True, len(ops)))
    rng = np.random.default_rng(case_seed(seed, case.name))
    c.run("graph: random candidates", candidate_pairs(action, ops, rng, samples), _agree(action))

    xops = enumerate_rrb_xmod(action_xmod_from_2group(action), budget=budget)
    c.checks.append(_equal_counts("bijection: counts", case.name, len(ops), len(xops)))
    for name, body in two_group_operator_theorems(action, {x.key() for x in xops}):
        c.run(name, ops, body)

    xhoms = enumerate_crossed_homs("two_group", action, budget=budget)
    c.checks.append(Check("enumerate crossed homomorphisms", case.name, True, len(xhoms)))

    def xhom_forms(dh):
        graph_check(dh)
        hat_D(dh)
        new, tilde = derived_action(dh)
        again, _ = derived_action(tilde)
        if not (np.array_equal(again.phi.perms, action.phi.perms)
                and np.array_equal(again.phi0.perms, action.phi0.perms)):
            return "derived action is not an involution"
        return None
    c.run("crossed homomorphism graph, hat-D, derived action", xhoms, xhom_forms)

    inverted = sorted(invert_correspondence(op).key() for op in ops
                      if is_bijective_map(op.B, P.n) and is_bijective_map(op.B0, P.n0))
    direct = sorted(d.key() for d in xhoms if is_bijective_map(d.D, Q.n) and is_bijective_map(d.D0, Q.n0))
    c.checks.append(_equal_sets("inverse correspondence: sets", case.name, inverted, direct))
    return c.checks


def _equal_counts(theorem: str, fixture: str, a: int, b: int) -> Check:
    return Check(theorem, fixture, a == b, a, "" if a == b else f"{a} vs {b}")


def _equal_sets(theorem: str, fixture: str, inverted: list, direct: list) -> Check:
    ok = inverted == direct
    return Check(theorem, fixture, ok, len(direct),
                 "" if ok else f"{len(inverted)} inverted operators vs {len(direct)} crossed homomorphisms")


# ----------------------------------------------------------------------------
# crossed-module cases

def run_xmod_case(case: fixtures.XModCase, budget: int = DEFAULT_BUDGET) -> list[Check]:
    c = _Collector(case.name)
    action = case.action()
    G, H = action.G, action.H
    ops = enumerate_rrb_xmod(action, budget=budget)
    c.checks.append(Check("enumerate operators", case.name, True, len(ops)))
    two_ops = enumerate_rrb_two_group(action_2group_from_xmod(action), budget=budget)
    c.checks.append(_equal_counts("bijection: counts", case.name, len(ops), len(two_ops)))
    for name, body in xmod_operator_theorems(action, {o.key() for o in two_ops}):
        c.run(name, ops, body)

    xhoms = enumerate_crossed_homs("xmod", action, budget=budget)
    inverted = sorted(invert_correspondence(op).key() for op in ops
                      if is_bijective_map(op.B1, G.g1.order) and is_bijective_map(op.B0, G.g0.order))
    direct = sorted(d.key() for d in xhoms
                    if is_bijective_map(d.D1, H.g1.order) and is_bijective_map(d.D0, H.g0.order))
    c.checks.append(_equal_sets("inverse correspondence: sets", case.name, inverted, direct))
    return c.checks


# ----------------------------------------------------------------------------
# user bundles: an action plus explicit operators

def run_bundle(level: str, action, operators: list[tuple[str, dict]]) -> list[Check]:
    """Check explicit operators; an operator that fails verification is reported and skipped."""
    checks: list[Check] = []
    for name, maps in operators:
        c = _Collector(name)
        try:
            op = _build(level, action, maps)
        except AlgebraError as exc:
            checks.append(Check("verify", name, False, 1, f"{type(exc).__name__}: {exc}"))
            continue
        checks.append(Check("verify", name, True, 1))
        if level == "group":
            c.run("descendant group", [op], lambda op: op.descendant_hom and None)
            if not is_rota_baxter_action(action):
                checks += c.checks
                continue
            discrete, pair = rb_group_to_rb_2groups(op)
            for label, lifted in (("discrete", discrete), ("pair", pair)):
                for theorem, body in two_group_operator_theorems(lifted.action):
                    c.run(f"{theorem} (lifted to the {label} 2-group)", [lifted], body)
        elif level == "two_group":
            for theorem, body in two_group_operator_theorems(action):
                c.run(theorem, [op], body)
        else:
            for theorem, body in xmod_operator_theorems(action):
                c.run(theorem, [op], body)
        checks += c.checks
    return checks


def _build(level: str, action, maps: dict):
    if level == "group":
        return RRBGroupOp(action, maps["B"])
    if level == "two_group":
        return RRB2GroupOp(action, maps["B"], maps["B0"])
    return RRBXModOp(action, maps["B1"], maps["B0"])


# ----------------------------------------------------------------------------
# Lie algebras

def run_lie_case(name: str) -> list[Check]:
    c = _Collector(name)
    g = fixtures.lie_algebra(name)
    n = g.dim
    action = adjoint_lie_action(g)
    xaction = adjoint_lie_xmod_action(identity_lie_xmod(g))
    ops = [("B = 0", zeros(n, n)), ("B = -Id", identity(n, -1))]
    c.run("Lie operators", ops, lambda item: verify_rrb_lie(item[1], action) and None)
    c.run("Lie crossed-module operators", ops,
          lambda item: verify_rrb_lie_xmod(item[1], item[1], xaction) and None)
    return c.checks


# ----------------------------------------------------------------------------
# the suite

def _task(args):
    kind, case, seed, samples, budget = args
    if kind == "two_group":
        return run_two_group_case(case, seed, samples, budget)
    if kind == "xmod":
        return run_xmod_case(case, budget)
    return run_lie_case(case)


def suite_tasks(seed: int = 0, samples: int = 30, budget: int = DEFAULT_BUDGET) -> list[tuple]:
    tasks = [("two_group", case, seed, samples, budget) for case in fixtures.TWO_GROUP_CASES]
    tasks += [("xmod", case, seed, samples, budget) for case in fixtures.XMOD_CASES]
    tasks += [("lie", name, seed, samples, budget) for name in fixtures.LIE_BUILDERS]
    return tasks


def run_suite(jobs: int = 1, seed: int = 0, samples: int = 30, budget: int = DEFAULT_BUDGET) -> list[Check]:
    tasks = suite_tasks(seed, samples, budget)
    if jobs <= 1:
        parts = [_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_task, tasks))
    return [check for part in parts for check in part]


def format_report(checks: list[Check], fmt: str = "text") -> str:
    if fmt == "json":
        import json

        return json.dumps([asdict(c) for c in checks], indent=1, sort_keys=True) + "\n"
    width = max((len(c.theorem) for c in checks), default=10)
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        line = f"{status}  {c.theorem:<{width}}  {c.fixture}  [{c.checked}]"
        if c.detail:
            line += f"  {c.detail}"
        lines.append(line)
    failed = sum(not c.passed for c in checks)
    lines.append(f"total: {len(checks)} checks, {failed} failed")
    return "\n".join(lines) + "\n"


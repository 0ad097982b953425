"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 I/O or
parse error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import fixtures, io, theorems
from .errors import AlgebraError, ParseError, SearchBudgetExceeded
from .rrb import (
    RRB2GroupOp,
    RRBGroupOp,
    RRBXModOp,
    cayley_factorization,
    enumerate_rrb_group,
    enumerate_rrb_two_group,
    enumerate_rrb_xmod,
    rrb_2group_to_xmod,
    rrb_xmod_to_2group,
)
from .search import DEFAULT_BUDGET
from .twogroup import TwoGroup, TwoGroupAction, discrete_two_group
from .xhom import enumerate_crossed_homs
from .xmod import (
    CrossedModule,
    action_2group_from_xmod,
    action_xmod_from_2group,
    two_group_to_xmod,
    xmod_to_two_group,
)
from .ybe import build_RB, verify_cat_ybe

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3
LEVELS = ("group", "two_group", "xmod")
GLOBAL_DEFAULTS = {"budget": DEFAULT_BUDGET, "jobs": 1, "seed": 0, "format": "text",
                   "out": None, "manifest": None}


class Outcome:
    """Text to emit plus the exit code it implies."""

    def __init__(self, text: str = "", code: int = EXIT_OK):
        self.text, self.code = text, code
        self.to_file = False


def _emit(args, payload, text_lines: list[str], code: int = EXIT_OK) -> Outcome:
    if args.format == "json":
        return Outcome(json.dumps(payload, indent=1, sort_keys=True) + "\n", code)
    return Outcome("\n".join(text_lines) + "\n", code)


def _failure(exc: AlgebraError) -> dict:
    witness = list(exc.witness) if getattr(exc, "witness", None) is not None else None
    return {"status": "FAIL", "error": type(exc).__name__, "message": str(exc), "witness": witness}


def _load(path: str):
    p = Path(path)
    if p.suffix == ".json":
        return io.read_json(p), io.Loader(p.parent)
    return path, io.Loader(".")


# ----------------------------------------------------------------------------
# commands

def cmd_validate(args) -> Outcome:
    data, loader = _load(args.path)
    kind = args.kind or io.detect_kind(data)
    build = {
        "group": loader.group, "two_group": loader.two_group, "xmod": loader.crossed_module,
        "group_action": loader.group_action, "two_group_action": loader.two_group_action,
        "xmod_action": loader.xmod_action, "lie": loader.lie_algebra,
        "operator": loader.operator, "crossed_hom": loader.operator,
    }[kind]
    try:
        build(data)
    except AlgebraError as exc:
        return _emit(args, {"kind": kind, **_failure(exc)}, [f"FAIL {type(exc).__name__}: {exc}"], EXIT_FAIL)
    return _emit(args, {"kind": kind, "status": "PASS"}, [f"PASS {kind}"])


def cmd_verify(args) -> Outcome:
    data, loader = _load(args.path)
    if io.detect_kind(data) not in ("operator", "crossed_hom"):
        raise ParseError("verify expects an operator or crossed-homomorphism file")
    try:
        op = loader.operator(data)
    except AlgebraError as exc:
        return _emit(args, _failure(exc), [f"FAIL {type(exc).__name__}: {exc}"], EXIT_FAIL)
    name = type(op).__name__
    return _emit(args, {"status": "PASS", "type": name}, [f"PASS {name}"])


def cmd_enumerate(args) -> Outcome:
    data, loader = _load(args.action)
    action = loader.action(args.level, data)
    try:
        if args.crossed_homs:
            found = enumerate_crossed_homs(args.level, action, budget=args.budget, jobs=args.jobs)
        else:
            search = {"group": enumerate_rrb_group, "two_group": enumerate_rrb_two_group,
                      "xmod": enumerate_rrb_xmod}[args.level]
            found = search(action, budget=args.budget, jobs=args.jobs)
    except SearchBudgetExceeded as exc:
        text = f"SearchBudgetExceeded: {exc}\npartial: {exc.found} solutions found before stopping\n"
        payload = {"status": "BUDGET", "nodes": exc.nodes, "partial": exc.found}
        return Outcome(json.dumps(payload, sort_keys=True) + "\n" if args.format == "json" else text, EXIT_BUDGET)
    docs = [io.operator_to_json(op) for op in found]
    for d in docs:
        d.pop("level")
        d.pop("kind", None)
    lines = [io.dumps(d) for d in docs] + [f"count: {len(docs)}"]
    return _emit(args, {"level": args.level, "operators": docs, "count": len(docs)}, lines)


def cmd_theorems(args) -> Outcome:
    if args.bundle is None:
        checks = theorems.run_suite(jobs=args.jobs, seed=args.seed, samples=args.samples, budget=args.budget)
    else:
        data, loader = _load(args.bundle)
        if not isinstance(data, dict):
            raise ParseError("a bundle must be a JSON object")
        level = data.get("level")
        if level not in LEVELS:
            raise ParseError(f"unknown level {level!r}")
        action = loader.action(level, data.get("action"))
        ops = []
        for k, entry in enumerate(data.get("operators", [])):
            maps = {key: np.asarray(v, dtype=np.int64) for key, v in entry.items() if key != "name"}
            ops.append((entry.get("name", f"operator {k}"), maps))
        try:
            checks = theorems.run_bundle(level, action, ops)
        except KeyError as exc:
            raise ParseError(f"operator is missing field {exc}") from exc
    code = EXIT_FAIL if any(not c.passed for c in checks) else EXIT_OK
    return Outcome(theorems.format_report(checks, args.format), code)


def _as_two_group_op(op) -> RRB2GroupOp:
    """Group-level operators become operators on discrete 2-groups."""
    if isinstance(op, RRB2GroupOp):
        return op
    if isinstance(op, RRBGroupOp):
        act = op.action
        lifted = TwoGroupAction(discrete_two_group(act.actor), discrete_two_group(act.target), act, act)
        return RRB2GroupOp(lifted, op.B, op.B)
    if isinstance(op, RRBXModOp):
        return rrb_xmod_to_2group(op)
    raise ParseError("expected a relative Rota-Baxter operator")


def _operator(args):
    data, loader = _load(args.path)
    return loader.operator(data)


def cmd_ybe(args) -> Outcome:
    op = _as_two_group_op(_operator(args))
    sol = build_RB(op)
    verify_cat_ybe(sol, op.action.target)
    doc = io.solution_to_json(sol)
    lines = [f"R ({sol.R.n} elements): {io.dumps(doc['R'])}",
             f"R0 ({sol.R0.n} elements): {io.dumps(doc['R0'])}",
             "PASS braid identity and functoriality"]
    return _emit(args, {"status": "PASS", **doc}, lines)


def cmd_factorize(args) -> Outcome:
    op = _as_two_group_op(_operator(args))
    f = cayley_factorization(op)
    P = op.action.actor
    arrows = [list(f.factorize(p)) for p in range(P.n)]
    objects = [list(f.factorize_object(x)) for x in range(P.n0)]
    lines = [f"arrow {p} = {a} . {b}^-1" for p, (a, b) in enumerate(arrows)]
    lines += [f"object {x} = {a} . {b}^-1" for x, (a, b) in enumerate(objects)]
    return _emit(args, {"arrows": arrows, "objects": objects}, lines)


def cmd_convert(args) -> Outcome:
    data, loader = _load(args.path)
    kind = io.detect_kind(data)
    if kind == "two_group":
        doc = io.xmod_to_json(two_group_to_xmod(loader.two_group(data)))
    elif kind == "xmod":
        doc = io.two_group_to_json(xmod_to_two_group(loader.crossed_module(data)))
    elif kind == "two_group_action":
        doc = io.xmod_action_to_json(action_xmod_from_2group(loader.two_group_action(data)))
    elif kind == "xmod_action":
        doc = io.two_group_action_to_json(action_2group_from_xmod(loader.xmod_action(data)))
    elif kind == "operator":
        op = loader.operator(data)
        if isinstance(op, RRB2GroupOp):
            new = rrb_2group_to_xmod(op)
        elif isinstance(op, RRBXModOp):
            new = rrb_xmod_to_2group(op)
        else:
            raise ParseError("only 2-group and crossed-module operators convert")
        doc = io.operator_to_json(new, io.action_to_json(new.action))
    else:
        raise ParseError(f"cannot convert a {kind}")
    return Outcome(json.dumps(doc, sort_keys=True) + "\n")


def export_fixture(name: str) -> dict:
    """The JSON document for a fixture id; ``adjoint:<id>`` exports an adjoint action."""
    if name.startswith("adjoint:"):
        base = export_target(name.split(":", 1)[1])
        return io.action_to_json(_adjoint(base))
    return _to_json(export_target(name))


def export_target(name: str):
    for build in (fixtures.group, fixtures.two_group, fixtures.crossed_module, fixtures.lie_algebra):
        try:
            return build(name)
        except (KeyError, ParseError):
            continue
    raise ParseError(f"unknown fixture {name!r}")


def _adjoint(obj):
    from .fingroup import FiniteGroup, conjugation_action
    from .twogroup import adjoint_action
    from .xmod import adjoint_xmod_action

    if isinstance(obj, FiniteGroup):
        return conjugation_action(obj)
    if isinstance(obj, TwoGroup):
        return adjoint_action(obj)
    if isinstance(obj, CrossedModule):
        return adjoint_xmod_action(obj)
    raise ParseError("adjoint actions exist for groups, 2-groups and crossed modules")


def _to_json(obj) -> dict:
    from .fingroup import FiniteGroup

    if isinstance(obj, FiniteGroup):
        return io.group_to_json(obj)
    if isinstance(obj, TwoGroup):
        return io.two_group_to_json(obj)
    if isinstance(obj, CrossedModule):
        return io.xmod_to_json(obj)
    return io.lie_to_json(obj)


def corpus_ids() -> list[str]:
    ids = list(fixtures.GROUP_BUILDERS)
    ids += [c.target for c in fixtures.TWO_GROUP_CASES] + [c.target for c in fixtures.XMOD_CASES]
    ids += list(fixtures.LIE_BUILDERS)
    return list(dict.fromkeys(ids))


def file_name(fixture_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9_]+", "_", fixture_id.replace("=>", "_2to_").replace("->", "_to_")) + ".json"


def cmd_export(args) -> Outcome:
    ids = args.fixtures or corpus_ids()
    docs = {name: export_fixture(name) for name in ids}
    if args.dir is None:
        return Outcome(json.dumps(docs, sort_keys=True) + "\n")
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in docs.items():
        (out / file_name(name)).write_text(json.dumps(doc, sort_keys=True) + "\n", encoding="utf-8")
    args.written = [str(out / file_name(name)) for name in ids]
    return Outcome("".join(f"wrote {p}\n" for p in args.written))


# ----------------------------------------------------------------------------
# manifest

def _inputs(args) -> list[str]:
    names = [getattr(args, k, None) for k in ("path", "action", "bundle")]
    return [n for n in names if n is not None]


def manifest(args, argv: list[str], output: str) -> dict:
    """Records what was run and digests of inputs and output."""
    h = hashlib.sha256()
    for name in _inputs(args):
        h.update(name.encode())
        p = Path(name)
        if p.is_file():
            h.update(p.read_bytes())
    outputs = [args.out] if args.out else []
    outputs += getattr(args, "written", [])
    return {"command": args.command, "argv": argv, "inputs": _inputs(args), "seed": args.seed,
            "budget": args.budget, "outputs": outputs, "digest": h.hexdigest(),
            "output_digest": hashlib.sha256(output.encode()).hexdigest()}


# ----------------------------------------------------------------------------
# argument parsing

def _global_flags(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("global options")
    g.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="search node budget (default 10^7)")
    g.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")
    g.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    g.add_argument("--out", default=argparse.SUPPRESS, help="write the output to a file")
    g.add_argument("--manifest", default=argparse.SUPPRESS, help="write a run manifest to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotabaxter",
                                     description="Relative Rota-Baxter operators on finite groups, "
                                                 "2-groups and crossed modules.")
    _global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "validate a structure file")
    p.add_argument("path")
    p.add_argument("--kind", choices=io.KINDS)

    p = add("enumerate", cmd_enumerate, "list every operator for an action")
    p.add_argument("action", help="action file or reference such as adjoint:S3")
    p.add_argument("--level", choices=LEVELS, default="group")
    p.add_argument("--crossed-homs", action="store_true", help="enumerate crossed homomorphisms instead")

    p = add("verify", cmd_verify, "verify an operator or crossed-homomorphism file")
    p.add_argument("path")

    p = add("theorems", cmd_theorems, "run the theorem suite on the corpus or on a bundle")
    p.add_argument("bundle", nargs="?")
    p.add_argument("--samples", type=int, default=30, help="random candidates per 2-group fixture")

    p = add("ybe", cmd_ybe, "build and check the Yang-Baxter solution of an operator")
    p.add_argument("path")

    p = add("factorize", cmd_factorize, "factorize every element through a Rota-Baxter operator")
    p.add_argument("path")

    p = add("convert", cmd_convert, "convert between 2-groups and crossed modules")
    p.add_argument("path")

    p = add("export", cmd_export, "write fixture files")
    p.add_argument("fixtures", nargs="*", help="fixture ids (default: the whole corpus)")
    p.add_argument("--dir", help="write one file per fixture into this directory")
    return parser


def run(argv: list[str]) -> Outcome:
    args = build_parser().parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        outcome = args.func(args)
    except SearchBudgetExceeded as exc:
        outcome = Outcome(f"SearchBudgetExceeded: {exc}\n", EXIT_BUDGET)
    except (ParseError, OSError) as exc:
        outcome = Outcome(f"error: {exc}\n", EXIT_IO)
    except AlgebraError as exc:
        outcome = Outcome(f"FAIL {type(exc).__name__}: {exc}\n", EXIT_FAIL)
    try:
        if args.out:
            Path(args.out).write_text(outcome.text, encoding="utf-8")
            outcome.to_file = True
        if args.manifest:
            Path(args.manifest).write_text(json.dumps(manifest(args, argv, outcome.text), indent=1,
                                                      sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        return Outcome(f"error: {exc}\n", EXIT_IO)
    return outcome


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    outcome = run(argv)
    if not outcome.to_file or outcome.code != EXIT_OK:
        stream = sys.stdout if outcome.code in (EXIT_OK, EXIT_FAIL) else sys.stderr
        stream.write(outcome.text)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())

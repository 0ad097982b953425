import hashlib
import json

import numpy as np
import pytest

import oracles
from rotabaxter import fixtures, io
from rotabaxter.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_IO, EXIT_OK, corpus_ids, file_name, main, run
from rotabaxter.errors import ParseError
from rotabaxter.fingroup import conjugation_action
from rotabaxter.twogroup import adjoint_action
from rotabaxter.xmod import adjoint_xmod_action


def write(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def s3_file(tmp_path):
    return write(tmp_path / "s3.json", io.group_to_json(fixtures.group("S3")))


def test_validate_good_group(s3_file):
    out = run(["validate", s3_file])
    assert out.code == EXIT_OK and out.text == "PASS group\n"


def test_validate_broken_table(tmp_path):
    # a Latin square that is not associative
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    assert not oracles.is_group(table)
    path = write(tmp_path / "bad.json", {"table": table})
    out = run(["validate", path])
    assert out.code == EXIT_FAIL and out.text.startswith("FAIL ")
    doc = json.loads(run(["validate", path, "--format", "json"]).text)
    assert doc["status"] == "FAIL" and doc["kind"] == "group"


def test_missing_file_and_bad_json(tmp_path):
    assert run(["validate", str(tmp_path / "absent.json")]).code == EXIT_IO
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run(["validate", str(bad)]).code == EXIT_IO
    assert run(["validate", write(tmp_path / "x.json", {"nothing": 1})]).code == EXIT_IO


def test_main_returns_exit_codes(s3_file, tmp_path, capsys):
    assert main(["validate", s3_file]) == EXIT_OK
    assert "PASS" in capsys.readouterr().out
    assert main(["validate", str(tmp_path / "absent.json")]) == EXIT_IO
    assert "error" in capsys.readouterr().err


def test_enumerate_counts_match_brute_force():
    out = run(["enumerate", "adjoint:S3"])
    assert out.code == EXIT_OK
    assert out.text.splitlines()[-1] == f"count: {oracles.cached_counts()['N_S3']}"
    act = conjugation_action(fixtures.group("Z4"))
    brute = oracles.brute_rrb(act.actor.table.tolist(), act.target.table.tolist(), act.perms.tolist())
    doc = json.loads(run(["enumerate", "adjoint:Z4", "--format", "json"]).text)
    assert doc["count"] == len(brute)
    assert sorted(tuple(d["B"]) for d in doc["operators"]) == sorted(map(tuple, brute))


def test_enumerate_other_levels():
    doc = json.loads(run(["enumerate", "adjoint:Z2=>T", "--level", "two_group", "--format", "json"]).text)
    assert [(d["B"], d["B0"]) for d in doc["operators"]] == [([0, 0], [0]), ([0, 1], [0])]
    doc = json.loads(run(["enumerate", "adjoint:inclusion-Z3", "--level", "xmod", "--crossed-homs",
                          "--format", "json"]).text)
    assert doc["count"] == 3


def test_enumerate_budget_exit_code():
    out = run(["enumerate", "adjoint:S3", "--budget", "1"])
    assert out.code == EXIT_BUDGET and "SearchBudgetExceeded" in out.text
    doc = json.loads(run(["enumerate", "adjoint:S3", "--budget", "1", "--format", "json"]).text)
    assert doc["status"] == "BUDGET"


def test_verify_operator_files(tmp_path):
    G = fixtures.group("S3")
    good = write(tmp_path / "inv.json", {"level": "group", "action": "adjoint:S3", "B": G.inverses.tolist()})
    out = run(["verify", good])
    assert out.code == EXIT_OK and out.text == "PASS RRBGroupOp\n"
    bad = write(tmp_path / "id.json", {"level": "group", "action": "adjoint:S3", "B": list(range(6))})
    doc = json.loads(run(["verify", bad, "--format", "json"]).text)
    assert run(["verify", bad]).code == EXIT_FAIL and doc["status"] == "FAIL" and doc["witness"]
    xh = write(tmp_path / "xh.json", {"level": "group", "kind": "crossed_hom", "action": "adjoint:S3",
                                      "D": [0] * 6})
    assert run(["verify", xh]).text == "PASS CrossedHomGroup\n"
    assert run(["verify", write(tmp_path / "g.json", io.group_to_json(G))]).code == EXIT_IO


def test_verify_with_action_in_a_separate_file(tmp_path):
    P = fixtures.two_group("pair-Z2")
    write(tmp_path / "pair.json", io.two_group_to_json(P))
    write(tmp_path / "act.json", io.two_group_action_to_json(adjoint_action(P)))
    op = write(tmp_path / "op.json", {"level": "two_group", "action": "act.json",
                                      "B": P.arrows.inverses.tolist(), "B0": P.objects.inverses.tolist()})
    assert run(["verify", op]).code == EXIT_OK


def test_ybe_and_factorize(tmp_path):
    G = fixtures.group("S3")
    path = write(tmp_path / "inv.json", {"level": "group", "action": "adjoint:S3", "B": G.inverses.tolist()})
    out = run(["ybe", path])
    assert out.code == EXIT_OK and out.text.splitlines()[-1].startswith("PASS")
    doc = json.loads(run(["ybe", path, "--format", "json"]).text)
    assert oracles.braid_ok(doc["R"], doc["n"])
    doc = json.loads(run(["factorize", path, "--format", "json"]).text)
    assert doc["arrows"] == [[0, int(G.inverses[p])] for p in range(6)]


def test_convert_round_trip(tmp_path):
    P = fixtures.two_group("pair-S3")
    path = write(tmp_path / "p.json", io.two_group_to_json(P))
    xdoc = json.loads(run(["convert", path]).text)
    assert io.detect_kind(xdoc) == "xmod"
    back = json.loads(run(["convert", write(tmp_path / "x.json", xdoc)]).text)
    assert io.detect_kind(back) == "two_group"
    assert len(back["arrow_group"]["table"]) == P.n
    assert run(["convert", write(tmp_path / "g.json", io.group_to_json(fixtures.group("Z2")))]).code == EXIT_IO


def test_convert_operator(tmp_path):
    X = fixtures.crossed_module("inclusion-Z2")
    act = adjoint_xmod_action(X)
    write(tmp_path / "act.json", io.xmod_action_to_json(act))
    path = write(tmp_path / "op.json", {"level": "xmod", "action": "act.json", "B1": [0, 1], "B0": [0, 1]})
    doc = json.loads(run(["convert", path]).text)
    assert doc["level"] == "two_group"
    assert run(["verify", write(tmp_path / "op2.json", doc)]).code == EXIT_OK


def test_export_directory_validates(tmp_path):
    out = run(["export", "--dir", str(tmp_path / "corpus")])
    assert out.code == EXIT_OK
    files = sorted((tmp_path / "corpus").iterdir())
    assert len(files) == len(corpus_ids())
    for f in files:
        assert run(["validate", str(f)]).code == EXIT_OK, f.name


def test_export_adjoint_action_feeds_enumerate(tmp_path):
    run(["export", "adjoint:Z3", "--dir", str(tmp_path)])
    path = tmp_path / file_name("adjoint:Z3")
    out = run(["enumerate", str(path)])
    assert out.text.splitlines()[-1] == "count: 3"


def test_file_names_are_safe():
    assert file_name("Z2=>T") == "Z2_2to_T.json"
    assert file_name("Z2->T") == "Z2_to_T.json"
    assert file_name("pair-S3") == "pair_S3.json"
    assert file_name("adjoint:S3") == "adjoint_S3.json"
    assert len({file_name(i) for i in corpus_ids()}) == len(corpus_ids())


def test_out_and_manifest(s3_file, tmp_path, capsys):
    out_path, man_path = tmp_path / "out.txt", tmp_path / "run.json"
    argv = ["validate", s3_file, "--out", str(out_path), "--manifest", str(man_path)]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == ""
    text = out_path.read_text(encoding="utf-8")
    assert text == "PASS group\n"
    man = json.loads(man_path.read_text(encoding="utf-8"))
    assert man["command"] == "validate" and man["argv"] == argv and man["outputs"] == [str(out_path)]
    assert man["output_digest"] == hashlib.sha256(text.encode()).hexdigest()
    h = hashlib.sha256(s3_file.encode())
    with open(s3_file, "rb") as fh:
        h.update(fh.read())
    assert man["digest"] == h.hexdigest()


def test_manifest_is_reproducible(s3_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["validate", s3_file, "--manifest", str(a)])
    run(["validate", s3_file, "--manifest", str(b)])
    ma, mb = json.loads(a.read_text()), json.loads(b.read_text())
    ma.pop("argv"), mb.pop("argv")
    assert ma == mb


def test_theorems_bundle(tmp_path):
    G = fixtures.group("S3")
    bundle = {"level": "group", "action": "adjoint:S3",
              "operators": [{"name": "inverse", "B": G.inverses.tolist()}, {"name": "zero", "B": [0] * 6}]}
    out = run(["theorems", write(tmp_path / "b.json", bundle)])
    assert out.code == EXIT_OK
    bad = {"level": "group", "action": "adjoint:S3", "operators": [{"name": "id", "B": list(range(6))}]}
    assert run(["theorems", write(tmp_path / "bad.json", bad)]).code == EXIT_FAIL
    missing = {"level": "two_group", "action": "adjoint:pair-Z2", "operators": [{"B": [0, 0, 0, 0]}]}
    assert run(["theorems", write(tmp_path / "m.json", missing)]).code == EXIT_IO
    assert run(["theorems", write(tmp_path / "l.json", {"level": "ring"})]).code == EXIT_IO


# ----------------------------------------------------------------------------
# io round trips

@pytest.mark.parametrize("name", list(fixtures.GROUP_BUILDERS))
def test_group_round_trip(name):
    G = fixtures.group(name)
    back = io.Loader().group(json.loads(json.dumps(io.group_to_json(G))))
    assert np.array_equal(back.table, G.table)


@pytest.mark.parametrize("case", fixtures.TWO_GROUP_CASES, ids=lambda c: c.name)
def test_two_group_action_round_trip(case):
    act = case.action()
    doc = json.loads(json.dumps(io.two_group_action_to_json(act)))
    assert io.detect_kind(doc) == "two_group_action"
    back = io.Loader().two_group_action(doc)
    assert np.array_equal(back.phi.perms, act.phi.perms) and np.array_equal(back.phi0.perms, act.phi0.perms)


@pytest.mark.parametrize("case", fixtures.XMOD_CASES, ids=lambda c: c.name)
def test_xmod_action_round_trip(case):
    act = case.action()
    doc = json.loads(json.dumps(io.xmod_action_to_json(act)))
    assert io.detect_kind(doc) == "xmod_action"
    back = io.Loader().xmod_action(doc)
    for k in ("alpha", "beta1", "beta0"):
        assert np.array_equal(getattr(back, k), getattr(act, k))


@pytest.mark.parametrize("name", list(fixtures.LIE_BUILDERS))
def test_lie_round_trip(name):
    g = fixtures.lie_algebra(name)
    back = io.Loader().lie_algebra(json.loads(json.dumps(io.lie_to_json(g))))
    assert back.structure == g.structure


def test_detect_kind():
    assert io.detect_kind({"table": []}) == "group"
    assert io.detect_kind({"level": "group"}) == "operator"
    assert io.detect_kind({"level": "group", "kind": "crossed_hom"}) == "crossed_hom"
    assert io.detect_kind({"g1": 1}) == "xmod"
    assert io.detect_kind({"structure": []}) == "lie"
    with pytest.raises(ParseError):
        io.detect_kind([1, 2])
    with pytest.raises(ParseError):
        io.detect_kind({"unrelated": 0})


def test_fractions_parse():
    assert io.parse_fraction([1, 3]) == io.parse_fraction("1/3")


def test_order_mismatch_is_a_parse_error():
    with pytest.raises(ParseError):
        io.Loader().group({"order": 3, "table": [[0, 1], [1, 0]]})
    with pytest.raises(ParseError):
        io.Loader().group({"order": 2})


def test_unknown_references():
    with pytest.raises(ParseError):
        io.Loader().group("Z99")
    with pytest.raises(ParseError):
        io.Loader().group_action("left:S3")


def test_xmod_adjoint_reference_matches_builder():
    act = io.Loader().xmod_action("adjoint:inclusion-S3")
    ref = adjoint_xmod_action(fixtures.crossed_module("inclusion-S3"))
    assert np.array_equal(act.alpha, ref.alpha)

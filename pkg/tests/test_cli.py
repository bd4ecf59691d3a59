from __future__ import annotations

import dataclasses
import json
import shlex

import pytest

from hssmap import suites
from hssmap.cli import main
from hssmap.family import Freudenthal
from hssmap.models import random_tangent_of_rank


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_example(capsys):
    code, out, _ = run(capsys, "info", "--family", "grassmann", "--p", "2", "--q", "2")
    d = json.loads(out)
    assert code == 0
    assert (d["n"], d["r"], d["N"], d["blocks"]) == (4, 2, 5, [1, 4, 1])


def test_info_all(capsys):
    code, out, _ = run(capsys, "info", "--format", "text", "--max-p", "3", "--max-n", "4")
    assert code == 0
    assert "G(3,2): n=6 r=2 N=9" in out
    assert "E7/P7: n=27 r=3 N=55" in out


def test_phi_example(capsys):
    code, out, _ = run(capsys, "phi", "--family", "quadric", "--n", "3", "--form", "sum-squares", "--point", "[1,1,0,0]", "--format", "text")
    assert (code, out.strip()) == (0, "[1,1,0,0,1]")
    code, out, _ = run(capsys, "phi", "--family", "quadric", "--n", "3", "--form", "sum-squares", "--point", '["1/2",1,0,0]')
    assert json.loads(out)["point"] == ["1", "2", "0", "0", "4"]


def test_psi_and_domain_errors(capsys):
    code, out, _ = run(capsys, "psi", "--family", "quadric", "--n", "3", "--point", "[2,2,0,0,2]", "--format", "text")
    assert (code, out.strip()) == (0, "[1,1,0,0]")
    code, _, err = run(capsys, "psi", "--family", "quadric", "--n", "3", "--point", "[0,0,0,0,1]")
    assert code == 1 and "center" in err
    code, _, err = run(capsys, "phi", "--family", "grassmann", "--p", "2", "--q", "2", "--point", "[0,1,0,0,0]")
    assert code == 1 and "rank 1" in err


def test_usage_errors(capsys):
    assert run(capsys, "run", "--suite", "bogus")[0] == 2
    assert run(capsys, "info", "--family", "grassmann", "--p", "7", "--q", "2")[0] == 2
    assert run(capsys, "info", "--family", "quadric")[0] == 2
    assert run(capsys, "phi", "--family", "quadric", "--n", "3", "--point", "[1.5,0,0,0]")[0] == 2
    assert run(capsys, "run", "--family", "cayley", "--trials", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_limit_rank_classify(capsys):
    f = Freudenthal()
    v = random_tangent_of_rank(f, 2, 5)
    elem = json.dumps(v.to_json())
    code, out, _ = run(capsys, "limit", "--family", "freudenthal", "--elem", elem)
    d = json.loads(out)
    assert code == 0 and d["rank"] == 2
    assert d["stratum"]["kind"] == "N_fixed" and d["stratum"]["index"] == 2
    nz = [i for i, c in enumerate(d["point"]) if c != "0"]
    assert all(28 <= i < 55 for i in nz)
    code, out, _ = run(capsys, "rank", "--family", "freudenthal", "--vec", elem)
    assert json.loads(out) == {"rank": 2, "secant_vanishing": {"1": False, "2": True}}
    code, out, _ = run(capsys, "classify", "--family", "quadric", "--n", "3", "--point", "[0,0,0,0,1]", "--format", "text")
    assert out.strip() == "N_fixed(2)"


def test_run_example(capsys):
    code, out, _ = run(capsys, "run", "--family", "quadric", "--n", "3", "--suite", "inverse", "--trials", "20", "--seed", "7")
    d = json.loads(out)
    assert code == 0
    assert d["schema_version"] == 1
    assert d["summary"] == {"cells": 1, "failures": 0, "pass": True}
    assert d["cells"][0]["trials"] == 20


def test_run_all_dimensions(capsys):
    code, out, _ = run(capsys, "run", "--family", "all", "--suite", "dimensions")
    assert code == 0 and json.loads(out)["summary"]["failures"] == 0


def test_report_is_deterministic(capsys):
    argv = ["run", "--family", "lag", "--n", "3", "--suite", "secant,limit", "--trials", "6", "--seed", "11"]
    _, a, _ = run(capsys, *argv, "--no-timing")
    _, b, _ = run(capsys, *argv, "--no-timing")
    assert a == b
    _, c, _ = run(capsys, *argv)
    strip = lambda d: [{k: v for k, v in cell.items() if k != "elapsed"} for cell in d["cells"]]
    assert strip(json.loads(c)) == strip(json.loads(a))


def test_failures_carry_a_replay_that_reproduces(capsys, monkeypatch):
    original = suites.SUITES["secant"].trial

    def broken(f, rng, ctx):
        inp, problem = original(f, rng, ctx)
        if rng.random() < 0.3:
            return inp, "injected failure"
        return inp, problem

    monkeypatch.setitem(suites.SUITES, "secant", dataclasses.replace(suites.SUITES["secant"], trial=broken))
    code, out, _ = run(capsys, "run", "--family", "grassmann", "--p", "3", "--q", "2", "--suite", "secant", "--trials", "10", "--seed", "3")
    d = json.loads(out)
    assert code == 1
    fails = d["cells"][0]["failures"]
    assert fails
    for fl in fails:
        argv = shlex.split(fl["replay"])
        assert argv[0] == "hssmap"
        code, out, _ = run(capsys, *argv[1:])
        again = json.loads(out)["cells"][0]["failures"]
        assert code == 1 and again == [fl]


def test_fixtures_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures", "--check")
    assert code == 0 and json.loads(out)["pass"]
    code, _, _ = run(capsys, "fixtures", "--fixtures", str(tmp_path))
    assert code == 0
    code, _, _ = run(capsys, "fixtures", "--check", "--fixtures", str(tmp_path))
    assert code == 0
    code, out, _ = run(capsys, "run", "--fixtures", str(tmp_path), "--suite", "roots,dimensions", "--family", "quadric", "--max-n", "5")
    assert code == 0
    data = json.loads((tmp_path / "tables.json").read_text())
    data["families"]["quadric:5"]["infinity"]["1"] += 1
    (tmp_path / "tables.json").write_text(json.dumps(data))
    assert run(capsys, "fixtures", "--check", "--fixtures", str(tmp_path))[0] == 1
    code, out, _ = run(capsys, "run", "--fixtures", str(tmp_path), "--suite", "dimensions", "--family", "quadric", "--n", "5")
    assert code == 1


def test_jobs_give_the_same_report(capsys):
    argv = ["run", "--family", "grassmann", "--max-p", "3", "--suite", "secant,inverse", "--trials", "5", "--no-timing"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    assert serial == parallel

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from flagrank import cli, serialize
from flagrank.cli import BUDGET, FAILED, INVALID, OK, run
from flagrank.constructions import named_example
from flagrank.flagcodes import UTCode
from flagrank.gf import gf


def _write(tmp_path, obj, name="code.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.mark.parametrize(
    "argv,dims",
    [
        (["construct", "A", "--q", "2", "--k", "2", "--eps", "1"], (4, 3)),
        (["construct", "A", "--q", "3", "--n", "3"], (3, 2)),
        (["construct", "B", "--q", "2", "--n", "5"], (5, 4)),
        (["construct", "delta2", "--q", "3", "--n", "4"], (4, 9)),
        (["construct", "delta3", "--q", "2", "--n", "7"], (7, 25)),
        (["construct", "C", "--q", "4", "--n", "5"], (5, 11)),
    ],
)
def test_construct_then_verify(tmp_path, argv, dims):
    res = run(argv)
    assert res.exit_code == OK
    assert (res.report["n"], len(res.report["basis"])) == dims
    v = run(["verify", _write(tmp_path, res.report)])
    assert v.exit_code == OK and v.report["is_mfrd"] and v.report["dim"] == dims[1]


def test_verify_certify_and_exact(tmp_path):
    path = _write(tmp_path, run(["construct", "delta3", "--q", "2", "--n", "4"]).report)
    r = run(["verify", path, "--certify", "3"])
    assert r.exit_code == OK and r.report["delta"] == 3
    r = run(["verify", path, "--exact"])
    assert r.exit_code == OK and r.report["strategy"] == "full-scan"
    assert run(["verify", path, "--certify", "3", "--exact"]).exit_code == INVALID


def test_verify_failure_and_dual(tmp_path):
    path = _write(tmp_path, run(["construct", "A", "--q", "2", "--k", "2", "--eps", "0"]).report)
    d = run(["dual", path])
    assert d.exit_code == OK and len(d.report["basis"]) == 4
    v = run(["verify", _write(tmp_path, d.report, "dual.json")])
    assert v.exit_code == FAILED
    assert (v.report["delta"], v.report["is_mfrd"], v.report["is_quasi_mfrd"]) == (1, False, False)


def test_bounds_command():
    r = run(["bounds", "--n", "5", "--delta", "8", "--q", "2"])
    assert r.exit_code == OK
    assert (r.report["w_max"], r.report["g"], r.report["f"]) == (9, 11, 4)
    assert r.report["slj"]["dim_bound"] == 4
    r = run(["bounds", "--n", "7", "--delta", "3", "--q", "2"])
    assert r.report["existence"]["status"] == "EXISTS" and r.report["corollary"]["value"] == 2
    assert run(["bounds", "--n", "3", "--delta", "9", "--q", "2"]).exit_code == INVALID


def test_example_command():
    assert run(["example", "ex4_9", "--q", "2"]).exit_code == OK
    r = run(["example", "ex5_5", "--q", "3"])
    assert r.exit_code == FAILED and r.report["delta"] == 4
    assert run(["example", "ex0", "--q", "2"]).exit_code == INVALID


def test_search_command():
    r = run(["search", "--q", "2", "--n", "4", "--delta", "3", "--trials", "100", "--seed", "3"])
    assert r.exit_code == OK and r.report["found"] and r.report["report"]["is_mfrd"]
    C = serialize.from_json(r.report["code"])
    assert isinstance(C, UTCode) and C.dim == 7
    r = run(["search", "--q", "2", "--n", "8", "--delta", "3", "--trials", "20", "--seed", "0"])
    assert r.exit_code == FAILED and not r.report["found"] and r.report["trials_run"] == 20


def test_isometry_command():
    r = run(["isometry-demo", "--n", "4", "--q", "3", "--samples", "50", "--seed", "1"])
    assert r.exit_code == OK and r.report["agree"] == 50 and r.report["mismatches"] == []


def test_error_exit_codes(tmp_path):
    assert run(["frobnicate"]).exit_code == INVALID
    assert run(["construct", "A", "--q", "6", "--n", "3"]).exit_code == INVALID
    assert run(["construct", "B", "--q", "2", "--n", "4"]).exit_code == INVALID
    assert run(["verify", str(tmp_path / "missing.json")]).exit_code == INVALID
    big = serialize.to_json(UTCode.full(gf(2), 7))
    r = run(["verify", _write(tmp_path, big), "--exact"])
    assert r.exit_code == BUDGET and "budget" in r.diagnostics


def test_main_prints_json(capsys):
    assert cli.main(["bounds", "--n", "4", "--delta", "4", "--q", "2"]) == OK
    out = json.loads(capsys.readouterr().out)
    assert (out["w_max"], out["g"], out["f"]) == (6, 4, 6)


def test_output_independent_of_threads(tmp_path):
    path = _write(tmp_path, serialize.to_json(named_example("ex5_5", gf(4))))
    outs = []
    for threads in ("1", "4"):
        env = {**os.environ, "FLAGRANK_THREADS": threads}
        proc = subprocess.run(
            [sys.executable, "-m", "flagrank.cli", "verify", path, "--exact"],
            capture_output=True, env=env, check=False,
        )
        assert proc.returncode == OK
        outs.append(proc.stdout)
    assert outs[0] == outs[1]

import json
import subprocess
import sys

import pytest

from conftest import DATA
from tropdegen.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return p


def test_nc_complete_line(capsys):
    code, out = run(capsys, "nc", "--in", DATA / "complete_R1.json")
    assert code == 0 and out["d"] == 1
    assert out["complex"] == json.loads((DATA / "complete_R1.json").read_text()) | {"rays": [[-1], [1]],
                                                                                    "points": [["0"]],
                                                                                    "cells": out["complex"]["cells"]}
    assert len(out["complex"]["cells"]) == 3


def test_valj(capsys):
    assert run(capsys, "valj", "--in", DATA / "loop5.json") == (0, {"val_j": "-5"})


def test_rz_banana(capsys):
    code, out = run(capsys, "rz", "--gamma", DATA / "banana.gamma.json")
    assert code == 0
    assert out["rows"] == {"0": [0, 2, 3], "1": [0, 0, 0], "2": [3, 2, 0]}
    assert out["e2_extreme_rows"] == {"0": [0, 1, 2], "2": [2, 1, 0]}
    assert out["e2_upper_bound_rows"] == [1]
    assert [e["kind"] for e in out["entries"] if e["q"] == 1] == ["assumed"]


def test_rz_strict_and_unsupported(capsys):
    code, out = run(capsys, "rz", "--gamma", DATA / "banana.gamma.json", "--strict")
    assert code == 1 and out["error"]["kind"] == "MissingBettiData"
    code, out = run(capsys, "rz", "--gamma", DATA / "banana.gamma.json", "--middle-differentials")
    assert code == 2 and out["error"]["kind"] == "UnsupportedRequest"


def test_rz_with_betti_data(capsys, tmp_path):
    b = write(tmp_path, "b.json", {"betti": [{"stratum": 0, "degree": 1, "dim": 6}]})
    code, out = run(capsys, "rz", "--gamma", DATA / "banana.gamma.json", "--betti", b, "--strict")
    assert code == 0 and out["rows"]["1"] == [0, 6, 0]


def test_cone_then_slice(capsys, tmp_path):
    code, out = run(capsys, "cone", "--in", DATA / "cone13.complex.json")
    assert code == 0
    fan = write(tmp_path, "fan.json", out["fan"])
    code, back = run(capsys, "slice", "--in", fan)
    assert code == 0
    code, orig = run(capsys, "rescale", "--in", DATA / "cone13.complex.json")
    key = lambda c: sorted(json.dumps(x, sort_keys=True) for x in c["cells"])
    assert key(back) == key(orig["complex"]) and orig["d"] == 1


def test_hypersurface_then_balance(capsys, tmp_path):
    code, T = run(capsys, "hypersurface", "--in", DATA / "line.polynomial.json")
    assert code == 0 and sorted(T["weights"].values()) == [1, 1, 1]
    code, out = run(capsys, "balance", "--in", write(tmp_path, "t.json", T))
    assert out == {"balanced": True, "violations": []}
    T["weights"]["1"] = 2
    code, out = run(capsys, "balance", "--in", write(tmp_path, "t2.json", T))
    assert code == 0 and not out["balanced"] and out["violations"][0]["cell"] == 0


def test_gamma_and_homology(capsys, tmp_path):
    code, out = run(capsys, "gamma", "--in", DATA / "double_segment.gamma.json")
    assert out["homology"]["betti"] == [1, 1] and not out["homotopy_flag"]
    code, out = run(capsys, "homology", "--gamma", DATA / "double_segment.gamma.json", "--bounded")
    assert out["betti"] == [1, 1]
    s = write(tmp_path, "s.json", {"simplices": [[1, 2, 4], [2, 3, 4], [3, 1, 5], [2, 1, 6], [3, 2, 5],
                                                 [1, 4, 5], [4, 3, 6], [4, 5, 6], [5, 2, 6], [1, 3, 6]]})
    code, out = run(capsys, "homology", "--in", s)
    assert out == {"betti": [1, 0, 0], "torsion": [[], [2], []]}


def test_refine_and_functor_checks(capsys, tmp_path):
    g = DATA / "double_segment.gamma.json"
    code, out = run(capsys, "refine-check", "--coarse", g, "--fine", g)
    assert code == 0 and out == {"ok": True, "reasons": []}
    A = write(tmp_path, "A.json", {"matrix": [[1]]})
    ident = write(tmp_path, "m.json", {"map": [
        {"cell": c, "component": y, "target_cell": c, "target_component": y}
        for c, ys in ((0, "v"), (1, "w"), (2, "ab")) for y in ys]})
    code, out = run(capsys, "functor-check", "--matrix", A, "--source", g, "--target", g, "--map", ident)
    assert out["ok"]
    A2 = write(tmp_path, "A2.json", {"matrix": [[2]]})
    code, out = run(capsys, "functor-check", "--matrix", A2, "--source", g, "--target", g, "--map", ident)
    assert code == 1 and out["error"]["kind"] == "CellImageNotContained"


def test_pairing(capsys, tmp_path):
    z = {"z1": [{"cell": 2, "component": "a", "coeff": 1}, {"cell": 2, "component": "b", "coeff": -1}]}
    z["z2"] = z["z1"]
    code, out = run(capsys, "pairing", "--gamma", DATA / "double_segment.gamma.json",
                    "--cycles", write(tmp_path, "z.json", z))
    assert (code, out) == (0, {"pairing": "2"})
    z["z2"] = [{"cell": 2, "component": "a", "coeff": 1}]
    code, out = run(capsys, "pairing", "--gamma", DATA / "double_segment.gamma.json",
                    "--cycles", write(tmp_path, "z2.json", z))
    assert code == 1 and out["error"]["kind"] == "NotACycle"


def test_curve_commands(capsys):
    code, out = run(capsys, "curve", "--in", DATA / "banana.curve.json")
    assert out["graded_h1"] == [2, 0, 2] and out["total_h1"] == 4
    code, out = run(capsys, "jacobian", "--in", DATA / "theta.curve.json")
    assert out["gram"] == [["5", "-3"], ["-3", "8"]] and out["volume"] == "31"
    code, out = run(capsys, "filtration", "--blocks", "2,2,1")
    assert out["gr"] == [0, 2, 1, 2, 0] and out["ok"]
    code, out = run(capsys, "bound", "--in", DATA / "banana.curve.json")
    assert out["ok"]
    code, out = run(capsys, "bound", "--b-gamma", "1,2", "--b-x", "1,2")
    assert code == 0 and not out["ok"]


def test_validate_and_errors(capsys, tmp_path):
    code, out = run(capsys, "validate", "--schema", "gamma", "--in", DATA / "banana.gamma.json")
    assert (code, out) == (0, {"schema": "gamma", "valid": True})
    bad = write(tmp_path, "bad.json", {"ambient_dim": 1, "points": [["1/0"]], "cells": [{"vertices": [0]}]})
    code, out = run(capsys, "validate", "--schema", "complex", "--in", bad)
    assert code == 1 and out["error"]["path"] == "/points/0/0"
    code, out = run(capsys, "valj", "--in", tmp_path / "missing.json")
    assert code == 1 and out["error"]["kind"] == "SchemaError"
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, out = run(capsys, "valj", "--in", broken)
    assert code == 1
    bad_cover = json.loads((DATA / "banana.gamma.json").read_text())
    bad_cover["weights"]["2"] = 2
    code, out = run(capsys, "gamma", "--in", write(tmp_path, "w.json", bad_cover))
    assert code == 1 and out["error"]["kind"] == "WeightMismatch" and out["error"]["cell"] == 2


def test_out_flag(capsys, tmp_path):
    dest = tmp_path / "o.json"
    assert main(["valj", "--in", str(DATA / "loop5.json"), "--out", str(dest)]) == 0
    assert json.loads(dest.read_text()) == {"val_j": "-5"}


@pytest.mark.parametrize("argv", [["rz", "--gamma", "banana.gamma.json"], ["nc", "--in", "cone13.complex.json"]])
def test_byte_identical_runs(argv):
    cmd = [sys.executable, "-m", "tropdegen.cli", *argv]
    a = subprocess.run(cmd, cwd=DATA, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, cwd=DATA, capture_output=True, check=True).stdout
    assert a == b and a

import json
import subprocess
import sys

import pytest

from homlie import catalog
from homlie.cli import run
from homlie.fileio import load_algebra


def report(argv):
    code, rep = run(argv)
    return code, json.loads(rep.render())


def test_check_example4():
    code, rep = report(["check", "examples/example4.alg"])
    assert code == 0
    assert rep["verdicts"]["hom_jacobi"] is True and rep["verdicts"]["lie"] is False
    assert "multiplicative" in rep["verdicts"]


def test_check_duplicate_pair(tmp_path):
    doc = json.loads(catalog.resolve("example4").read_text())
    doc["bracket"].append(doc["bracket"][0])
    p = tmp_path / "dup.alg"
    p.write_text(json.dumps(doc))
    code, rep = report(["check", str(p)])
    assert code == 2 and "duplicate" in rep["error"]


def test_check_negative_verdict(tmp_path):
    doc = json.loads(catalog.resolve("example4").read_text())
    doc["alpha"] = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
    p = tmp_path / "e4id.alg"
    p.write_text(json.dumps(doc))
    code, rep = report(["check", str(p)])
    assert code == 1 and rep["details"]["hom_jacobi_defects"][0]["triple"] == [0, 1, 2]


def test_classify_disguised():
    code, rep = report(["classify", "examples/mu52_disguised.alg"])
    assert code == 0 and rep["verdicts"]["name"] == "mu_5^2" and rep["verdicts"]["verified"]


def test_classify_non_filiform():
    code, rep = report(["classify", "example4"])
    assert code == 1 and rep["verdicts"]["classified"] is False


def test_usage_errors():
    assert run(["bogus"])[0] == 2
    assert run(["check"])[0] == 2
    assert run(["check", "example4", "--nope"])[0] == 2
    assert run(["check", "missing.alg"])[0] == 2


def test_series():
    code, rep = report(["series", "model_l4"])
    assert code == 0 and rep["verdicts"]["central_dims"] == [5, 3, 2, 1, 0]
    assert rep["verdicts"]["nilindex"] == 4 and rep["verdicts"]["filiform"]


def test_twist_writes_file(tmp_path):
    out = tmp_path / "t.alg"
    code, rep = report(["twist", "example32", "--map", "example32_b", "--out", str(out)])
    assert code == 0 and rep["verdicts"]["filiform"]
    assert load_algebra(out).dim == 4
    code, rep = report(["twist", "example32", "--map", "example32_a"])
    assert rep["verdicts"]["nilpotent"] and not rep["verdicts"]["filiform"]
    assert report(["twist", "example32"])[0] == 2
    assert report(["twist", "example4", "--variant", "untwist"])[0] == 2


def test_change_and_deform(tmp_path):
    code, rep = report(["change", "mu52", "nu:2,3"])
    assert code == 0 and rep["verdicts"]["change"] == "nu(2,3)"
    assert report(["change", "mu52", "sigma:1,9"])[0] == 2
    code, rep = report(["deform", "--n", "5", "--coeff", "1,4=1", "--coeff", "2,5=1"])
    assert code == 0 and rep["verdicts"]["deformation"]
    assert report(["deform", "--n", "5", "--coeff", "3,3=1"])[0] == 2
    assert report(["deform", "--n", "5", "--coeff", "junk"])[0] == 2


def test_deform_negative(tmp_path):
    m = tmp_path / "a.map"
    m.write_text(json.dumps({"matrix": [[(2 if i == 1 else 1) if i == j else 0 for j in range(6)] for i in range(6)]}))
    code, rep = report(["deform", "--n", "5", "--coeff", "1,4=1", "--coeff", "2,5=1", "--alpha", str(m)])
    assert code == 1 and rep["verdicts"]["deformation"] is False


def test_cocycle():
    code, rep = report(["cocycle", "sl2", "--arity", "2"])
    assert code == 0 and rep["verdicts"]["cohomology_dim"] == 0
    code, rep = report(["cocycle", "model_l3", "--form", "circle", "--basis"])
    assert len(rep["details"]["cocycle_basis"]) == rep["verdicts"]["cocycle_dim"]


def test_oracle():
    code, rep = report(["oracle", "iso", "mu52", "mu52", "--p", "3", "--adapted"])
    assert code == 0 and rep["verdicts"]["isomorphic"]
    code, rep = report(["oracle", "iso", "model_l4", "mu52", "--p", "3", "--adapted"])
    assert code == 1


def test_audit_small():
    code, rep = report(["audit", "--dim", "3-4", "--samples", "3", "--seed", "1"])
    assert code == 0 and rep["verdicts"]["complete"]
    assert report(["audit", "--dim", "9"])[0] == 2


def test_reports_are_byte_identical():
    for argv in (["audit", "--dim", "5", "--samples", "4", "--seed", "7"], ["classify", "mu52_disguised"]):
        assert run(argv)[1].render() == run(argv)[1].render()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "homlie", "check", "example5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdicts"]["multiplicative"] is True

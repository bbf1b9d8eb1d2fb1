import io
import json
import subprocess
import sys

import pytest

from qcoh.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_relations_json():
    code, out, _ = call("relations", "--genus", "3", "--flavor", "quantum", "--format", "json")
    assert code == 0
    env = json.loads(out)
    assert env["schema_version"] == 1
    assert env["command"] == "relations"
    assert env["status"] == "ok"
    assert env["conventions"]["conjectural"] is False
    assert env["conventions"]["hat_classes"]["r_g"] == "0"
    assert [r["text"] for r in env["payload"]["relations"]] == [
        "ah^3 + 5*ah*bh + 4*gh - 24*ah",
        "ah^2*bh + 4/3*ah*gh + bh^2 + 8*ah^2 + 16*bh + 64",
        "ah^2*gh + bh*gh + 8*gh",
    ]


def test_determinism():
    first = call("relations", "--genus", "5", "--flavor", "floer", "--format", "json")
    second = call("relations", "--genus", "5", "--flavor", "floer", "--format", "json")
    assert first == second


def test_conjectural_flag_in_band():
    code, _, err = call("relations", "--genus", "4", "--flavor", "quantum")
    assert code == 2 and "conjectural" in err
    code, out, _ = call("relations", "--genus", "4", "--flavor", "quantum", "--conjectural", "--format", "json")
    assert code == 0
    assert json.loads(out)["conventions"]["conjectural"] is True
    code, out, _ = call("relations", "--genus", "4", "--flavor", "quantum", "--conjectural")
    assert "[CONJECTURAL]" in out


def test_gw_genus_two_refused():
    code, out, err = call("gw", "--genus", "2", "--a", "5", "--b", "0")
    assert code == 2
    assert out == ""
    assert "genus 2" in err


def test_gw_balance_named():
    code, _, err = call("gw", "--genus", "3", "--a", "7")
    assert code == 2
    assert "degree balance" in err


def test_gw_json():
    code, out, _ = call("gw", "--genus", "3", "--a", "8", "--format", "json")
    assert code == 0
    p = json.loads(out)["payload"]
    assert p["value"] == "5632"
    assert p["donaldson"] == "5632"
    assert p["engine"] == "both"
    assert p["convention"].startswith("vol(J): phi1^phi(1+g)")


def test_gw_psi():
    code, out, _ = call("gw", "--genus", "3", "--a", "5", "--psi", "1,4", "--engine", "qhn")
    assert code == 0
    assert out.startswith("Psi(a^5 b^0 psi[1, 4]) = 64")
    code, _, _ = call("gw", "--genus", "3", "--a", "5", "--psi", "1,x")
    assert code == 2


def test_gw_table_csv():
    code, out, _ = call("gw-table", "--genus", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "genus,a,b,psi,value,donaldson"
    assert "3,8,0,,5632,5632" in lines
    assert len(lines) == 16
    code, _, _ = call("gw-table", "--genus", "9")
    assert code == 2


def test_nf_and_qmul():
    code, out, _ = call("nf", "--genus", "2", "--expr", "a^2")
    assert (code, out) == (0, "NF = -b\n")
    code, out, _ = call("nf", "--genus", "3", "--mode", "quantum", "--expr", "gh^2*(bh - 8)")
    assert out == "NF = -16*gh^2\n"
    code, out, _ = call("qmul", "--genus", "2", "--expr", "ah * ah")
    assert out == "ah * ah = -bh + 8\n"
    code, _, err = call("nf", "--genus", "2", "--expr", "a +")
    assert code == 2
    code, _, _ = call("nf", "--genus", "2", "--expr", "a^20")
    assert code == 2
    code, out, _ = call("nf", "--genus", "2", "--expr", "a^20", "--max-degree", "40")
    assert code == 0


def test_basis_and_decompose():
    code, out, _ = call("basis", "--genus", "2", "--format", "json")
    p = json.loads(out)["payload"]
    assert p["dimension"] == 4 and p["basis"] == ["1", "a", "b", "g"]
    code, out, _ = call("decompose", "--genus", "3", "--direct", "--format", "json")
    p = json.loads(out)["payload"]
    assert p["total"] == 48
    assert all(r["primitive_dim"] == r["primitive_dim_direct"] for r in p["summands"])


def test_grr():
    code, out, _ = call("grr", "--genus", "3")
    assert code == 0
    assert "= 3 + 4*omega : True" in out


def test_usage_errors():
    assert call("--bogus")[0] == 64
    assert call()[0] == 64
    assert call("frobnicate")[0] == 64
    assert call("relations")[0] == 64
    assert call("relations", "--genus", "x")[0] == 64
    assert call("nf", "--genus", "2")[0] == 64


def test_verify_single_suite():
    code, out, _ = call("verify", "--suite", "grr", "--genus", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["payload"]["passed"] is True


def test_verify_prop19_reports_the_false_clause():
    # every check passes except gh^2 (bh - 8) = 0, which is false in the genus-3 ring
    code, out, err = call("verify", "--suite", "prop19", "--genus", "3", "--format", "json")
    assert code == 1
    env = json.loads(out)
    assert env["status"] == "failed"
    failed = [c["label"] for r in env["payload"]["reports"] for c in r["checks"] if not c["passed"]]
    assert failed == ["genus 3 quotient: gh^2*(bh - 8) = 0"]
    assert "gh^2 (bh - 8) = -16*gh^2" in err


def test_out_file(tmp_path):
    path = tmp_path / "rel.txt"
    code, out, _ = call("relations", "--genus", "2", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("classical relations, genus 2")


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "qcoh", "gw", "--genus", "2", "--a", "5"], capture_output=True, text=True
    )
    assert res.returncode == 2


@pytest.mark.parametrize("suite", ["relations", "lemma9", "qring", "kernel"])
def test_verify_suites_pass(suite):
    code, _, _ = call("verify", "--suite", suite, "--genus", "3")
    assert code == 0

import io
import json

import pytest

from courant_kit import bialgebroid as bg
from courant_kit import ecourant as ec
from courant_kit import pointfiber as pf
from courant_kit import sampling as sm
from courant_kit import serialize as se
from courant_kit import twist as tw
from courant_kit.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        path = tmp_path / name
        se.dump(obj, path)
        return path
    A, V = ec.omni_split(2)
    return {
        "omni2": put("omni2.json", ec.omni(2)),
        "jet": put("jetpart.json", V),
        "gl": put("gl.json", A),
        "gl2": put("gl2.json", pf.gl_algebra(2)),
        "jetmod": put("jetmod.json", pf.jet_module(2)),
        "adm": put("adm.json", tw.pair_from_b(sm.bfield(sm.rng(5), 2))),
        "bad_adm": put("bad_adm.json", tw.AdmissiblePair(tw.omega_b(sm.bfield(sm.rng(5), 2)),
                                                        tw.partial_b(sm.bfield(sm.rng(5), 2)) * 0)),
        "can3": put("can3.json", bg.canonical_pair(3)),
        "so3": put("so3.json", pf.so3()),
        "nj": put("nj.json", pf.non_jacobi()),
        "tmp": tmp_path,
    }


def test_verify_ecourant(files):
    code, out, _ = run("verify-ecourant", files["omni2"], "--format", "json")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_dirac_jet_part(files):
    assert run("verify-dirac", files["omni2"], files["jet"])[0] == 0


def test_verify_dirac_failure(files, tmp_path):
    L = tmp_path / "line.json"
    se.dump(ec.omni_split(2)[1].__class__.span(sm.tensor(sm.rng(1), 1, 6), 6), L)
    code, out, _ = run("verify-dirac", files["omni2"], L, "--format", "json")
    assert code == 1 and json.loads(out)["dirac"] is False


def test_leibniz_cohomology(files):
    code, out, _ = run("leibniz-cohomology", files["gl2"], files["jetmod"], "--format", "json")
    assert code == 0
    assert json.loads(out)["dims"] == {"HL^0": 2, "HL^1": 0, "HL^2": 0}
    code, _, err = run("leibniz-cohomology", files["gl2"], files["jetmod"], "--cohomology-dim-cap", "1")
    assert code == 2 and "cap" in err


def test_classify_twist(files):
    code, out, _ = run("classify-twist", files["adm"], "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["admissible"] and rep["builds"]
    assert rep["trivialization"]["shape"] == [4, 2]
    code, out, _ = run("classify-twist", files["bad_adm"], "--format", "json")
    assert code == 1 and json.loads(out)["conditions"]["cond2"] is False


def test_double_writes_omni(files):
    target = files["tmp"] / "d.json"
    code, out, _ = run("double", files["can3"], "--output", target, "--format", "json")
    assert code == 0 and json.loads(out)["axioms"] is True
    assert se.load(target) == ec.omni(3)


def test_manin(files):
    code, out, _ = run("manin", files["omni2"], files["gl"], files["jet"], "--format", "json")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run("manin", files["omni2"], files["jet"], files["jet"], "--format", "json")
    assert code == 1 and json.loads(out)["error"] == "NotTransverse"


def test_maurer_cartan(files):
    code, out, _ = run("maurer-cartan", files["can3"], files["so3"], "--format", "json")
    assert code == 0 and json.loads(out)["agree"] is True
    code, out, _ = run("maurer-cartan", files["can3"], files["nj"], "--format", "json")
    rep = json.loads(out)
    assert code == 1 and rep["witness"][:2] == rep["closureWitness"] == [0, 1]


def test_bad_rational_exit_2(files, tmp_path):
    d = json.loads(files["omni2"].read_text())
    d["pairing"]["entries"][5] = "1/0"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, out, err = run("verify-ecourant", bad)
    assert code == 2 and out == ""
    assert "$.pairing.entries[5]" in err and "zero denominator" in err


def test_missing_file_and_usage():
    assert run("verify-ecourant", "/nonexistent.json")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("selftest", "--seed", "-1")[0] == 2


def test_dim_cap(files):
    assert run("verify-ecourant", files["omni2"], "--dim-cap", "1")[0] == 2


def test_reports_are_deterministic(files):
    a = run("maurer-cartan", files["can3"], files["nj"], "--format", "json")
    b = run("maurer-cartan", files["can3"], files["nj"], "--format", "json")
    assert a == b
    t = run("verify-ecourant", files["omni2"])
    assert t == run("verify-ecourant", files["omni2"])


def test_options_before_or_after_command(files):
    before = run("--format", "json", "verify-ecourant", files["omni2"])
    after = run("verify-ecourant", files["omni2"], "--format", "json")
    assert before == after and before[1].startswith("{")
    assert run("--dim-cap", "1", "verify-ecourant", files["omni2"])[0] == 2

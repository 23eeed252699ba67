import json
import subprocess
import sys

import pytest

from weakunits import models
from weakunits.certificate import load_certificate, recheck, save_certificate
from weakunits.cli import main
from weakunits.errors import StructuralError
from weakunits.kernel import validate_model
from weakunits.modelio import load_model, model_from_json, model_hash, model_to_json, save_model


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("models")
    for k in ("m3", "z2p", "zg", "chp"):
        assert main(["gen", k, "--out", str(d / f"{k}.json")]) == 0
    save_model(models.with_entry(models.zg(), "hcomp", (2, 2), 1), d / "fault.json")
    return d


@pytest.mark.parametrize("name", ["m3", "z2p", "zg", "chp", "euz"])
def test_model_json_round_trip(name):
    m = models.GENERATORS[name]()
    back = model_from_json(json.loads(json.dumps(model_to_json(m))))
    for t in models.TABLES:
        assert (getattr(back, f"{t}_table") == getattr(m, f"{t}_table")).all()
    assert model_hash(back) == model_hash(m)
    assert validate_model(back).ok


def test_generation_is_byte_identical(files, tmp_path):
    assert main(["gen", "zg", "--out", str(tmp_path / "again.json")]) == 0
    assert (tmp_path / "again.json").read_bytes() == (files / "zg.json").read_bytes()


def test_gen_monoid(tmp_path, capsys):
    assert main(["gen", "monoid:0,1;1,0", "--out", str(tmp_path / "z2.json")]) == 0
    assert load_model(tmp_path / "z2.json").n_objects == 2
    assert main(["gen", "monoid:0,1;1"]) == 2
    assert main(["gen", "nope"]) == 2


def test_malformed_model_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1}')
    with pytest.raises(StructuralError):
        load_model(bad)
    assert main(["verify", str(bad), "A"]) == 2
    bad.write_text("not json")
    assert main(["validate", str(bad)]) == 2
    assert main(["verify", str(tmp_path / "missing.json"), "A"]) == 2


def test_validate(files, tmp_path, capsys):
    assert main(["validate", str(files / "zg.json")]) == 0
    assert main(["validate", str(files / "fault.json"), "--out", str(tmp_path / "v.cert")]) == 1
    assert "interchange" in capsys.readouterr().out
    doc = json.loads((files / "zg.json").read_text())
    doc["vcomp"] = [r for r in doc["vcomp"] if r[:2] != [0, 0]]
    (tmp_path / "hole.json").write_text(json.dumps(doc))
    assert main(["validate", str(tmp_path / "hole.json")]) == 2


def test_find_units(files, capsys):
    assert main(["find-units", str(files / "zg.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert [(u["I"], u["alpha"]) for u in out] == [(0, 0), (0, 1)]
    assert [u["labels"] for u in out] == [["I", "e"], ["I", "u"]]


def test_synth_all_choices(files, tmp_path):
    out = tmp_path / "s.cert"
    assert main(["synth", str(files / "zg.json"), "--unit", "0,1", "--all-choices", "--out", str(out)]) == 0
    cert = load_certificate(out)
    assert sum(1 for k in cert["witnesses"] if k.endswith("/A")) == 16
    assert recheck(cert).ok
    assert main(["synth", str(files / "zg.json"), "--unit", "1,2"]) == 2


@pytest.mark.parametrize("theorem", ["A", "B", "C", "E", "actions"])
@pytest.mark.parametrize("name", ["z2p", "zg"])
def test_verify_and_recheck(files, tmp_path, name, theorem):
    out = tmp_path / f"{name}-{theorem}.cert"
    assert main(["verify", str(files / f"{name}.json"), theorem, "--out", str(out)]) == 0
    cert = load_certificate(out)
    assert cert["ok"] and cert["checked_equations"]
    assert all(e["result"] for e in cert["checked_equations"] if e["name"] in ("short pentagon", "full pentagon"))
    assert main(["report", str(out), "--recheck"]) == 0


def test_verify_dim1(files, tmp_path):
    out = tmp_path / "d.cert"
    assert main(["verify", str(files / "m3.json"), "dim1", "--out", str(out)]) == 0
    cert = load_certificate(out)
    assert cert["dimension"] == 1 and {e["dim"] for e in cert["checked_equations"]} == {1}
    assert main(["report", str(out), "--recheck"]) == 0
    assert main(["verify", str(files / "zg.json"), "dim1"]) == 2


def test_fault_injected_model_fails_theorem_A(files, tmp_path, capsys):
    assert main(["verify", str(files / "fault.json"), "A"]) == 1
    out = tmp_path / "f.cert"
    assert main(["verify", str(files / "fault.json"), "A", "--allow-invalid", "--out", str(out)]) == 1
    assert "counterexample: unit 0:1: short pentagon" in capsys.readouterr().out
    cert = load_certificate(out)
    assert not cert["ok"]
    assert any(e["name"] == "short pentagon" and not e["result"] for e in cert["checked_equations"])
    assert main(["report", str(out), "--recheck"]) == 0


def test_tampered_certificates(files, tmp_path):
    out = tmp_path / "a.cert"
    assert main(["verify", str(files / "zg.json"), "A", "--out", str(out)]) == 0
    cert = load_certificate(out)
    cert["checked_equations"][0]["values"][0] += 1
    save_certificate(cert, tmp_path / "values.cert")
    assert main(["report", str(tmp_path / "values.cert"), "--recheck"]) == 1
    cert = load_certificate(out)
    cert["model"]["vcomp"][0][2] = 1
    save_certificate(cert, tmp_path / "model.cert")
    assert main(["report", str(tmp_path / "model.cert"), "--recheck"]) == 2
    (tmp_path / "junk.cert").write_text("{")
    assert main(["report", str(tmp_path / "junk.cert")]) == 2


def test_module_entry_point(files):
    r = subprocess.run(
        [sys.executable, "-m", "weakunits", "verify", str(files / "z2p.json"), "C"],
        capture_output=True, text=True,
    )
    assert r.returncode == 0 and "pass" in r.stdout

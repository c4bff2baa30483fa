import json

import pytest
from click.testing import CliRunner

from schober.hecke import a2_data
from schober.schobercli import CONDITIONS, SUPPLEMENTARY, SchoberReport, SuiteConfig, main, run_schober_suite

SMALL = {"max_n_decat": 3, "max_n_cat": 2, "degree_bound": 6}


@pytest.fixture
def runner():
    return CliRunner()


def test_cube_comp(runner):
    r = runner.invoke(main, ["cube", "comp", "4"])
    assert r.exit_code == 0
    assert len(json.loads(r.output)["vertices"]) == 8
    r = runner.invoke(main, ["cube", "comp", "3", "--dot"])
    assert r.exit_code == 0 and r.output.startswith("digraph")


def test_cube_bifact(runner):
    r = runner.invoke(main, ["cube", "bifact", "4", "3", "2", "5", "--json"])
    assert r.exit_code == 0 and len(json.loads(r.output)["vertices"]) == 16
    r = runner.invoke(main, ["cube", "bifact", "2", "1", "2", "2"])
    assert r.exit_code != 0


def test_hecke_verify(runner, tmp_path):
    out = tmp_path / "digon.json"
    r = runner.invoke(main, ["hecke", "verify", "--suite", "digon", "-n", "4", "--json", str(out)])
    assert r.exit_code == 0, r.output
    assert "multiplicity" in r.output
    assert json.loads(out.read_text())["status"] == "pass"


def test_hecke_verify_bad_n(runner):
    r = runner.invoke(main, ["hecke", "verify", "--suite", "digon", "-n", "1"])
    assert r.exit_code == 2


def test_bimod_verify(runner):
    r = runner.invoke(main, ["bimod", "verify", "--suite", "a1", "--degree-bound", "6"])
    assert r.exit_code == 0, r.output
    r = runner.invoke(main, ["bimod", "verify", "--suite", "a1", "--degree-bound", "7"])
    assert r.exit_code == 2


def test_perverse_check(runner, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"shape": "a2", **a2_data().to_json()}))
    r = runner.invoke(main, ["perverse", "check", "--input", str(good)])
    assert r.exit_code == 0 and json.loads(r.output)["status"] == "pass"
    bad = json.loads(good.read_text())
    bad["maps"]["h"][0][0] = f"({bad['maps']['h'][0][0]}) + 1"
    badp = tmp_path / "bad.json"
    badp.write_text(json.dumps(bad))
    r = runner.invoke(main, ["perverse", "check", "--input", str(badp)])
    assert r.exit_code == 1 and json.loads(r.output)["status"] == "fail"
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"shape": "a2", "ranks": {}, "maps": {}}))
    assert runner.invoke(main, ["perverse", "check", "--input", str(broken)]).exit_code == 2


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig.from_dict({"degree_bound": 7}, env={})
    with pytest.raises(ValueError):
        SuiteConfig.from_dict({"nonsense": 1}, env={})
    cfg = SuiteConfig.from_dict({}, env={"SCHOBER_THREADS": "3", "SCHOBER_OUTPUT_DIR": "/tmp/x"})
    assert cfg.threads == 3 and cfg.output_dir == "/tmp/x"
    assert SuiteConfig.from_dict(cfg.to_dict(), env={}) == cfg


def test_small_schober_run(tmp_path):
    cfg = SuiteConfig.from_dict({**SMALL, "output_dir": str(tmp_path)}, env={})
    rep = run_schober_suite(cfg)
    assert set(rep.conditions) == set(CONDITIONS) | {SUPPLEMENTARY}
    assert rep.passed, {k: rep.condition_status(k) for k in rep.conditions}
    rep.write(tmp_path)
    assert (tmp_path / "summary.json").exists() and (tmp_path / "timings.json").exists()
    back = SchoberReport.from_json(rep.to_json())
    assert back.content() == rep.content()


def test_schober_run_cli(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(SMALL))
    out = tmp_path / "rep.json"
    r = runner.invoke(main, ["schober", "run", "--config", str(cfg), "--json", str(out)])
    assert r.exit_code == 0, r.output
    assert "overall: pass" in r.output
    assert "report" in json.loads(out.read_text())
    cfg.write_text(json.dumps({"degree_bound": 5}))
    assert runner.invoke(main, ["schober", "run", "--config", str(cfg)]).exit_code == 2


def test_disabled_checks_are_not_attempted():
    cfg = SuiteConfig.from_dict({**SMALL, "named_n4": False, "braid_witness": False}, env={})
    rep = run_schober_suite(cfg)
    skipped = [c for cs in rep.conditions.values() for c in cs if c["status"] == "not attempted"]
    assert {c["name"] for c in skipped} >= {"T13 = q^3 C", "categorified TST = STS"}
    assert not rep.passed

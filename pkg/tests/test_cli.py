import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from dgq.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "docs" / "fixtures"


@pytest.fixture
def runner():
    return CliRunner()


def build(runner, *args):
    res = runner.invoke(main, ["build", *args])
    assert res.exit_code == 0, res.output
    return res.output


def test_validate_fixtures(runner):
    assert runner.invoke(main, ["validate", str(FIXTURES / "bimodule_c2.json")]).exit_code == 0
    res = runner.invoke(main, ["validate", str(FIXTURES / "broken_interchange.json")])
    assert res.exit_code == 1
    report = json.loads(res.output)
    assert any(f["axiom"] == "interchange" and f["witness"] for f in report["failures"])
    res = runner.invoke(main, ["validate", str(FIXTURES / "empty_boxes.json")])
    assert res.exit_code == 1 and "missing-vertical-identity" in res.output


def test_parse_error_exit_code(runner):
    assert runner.invoke(main, ["validate", "-"], input="{oops").exit_code == 2
    assert runner.invoke(main, ["validate", "/nonexistent.json"]).exit_code == 2


def test_no_siempre_pipeline(runner):
    doc = build(runner, "no-siempre", "--m", "3", "--n", "1")
    res = runner.invoke(main, ["wha", "-", "--verify", "--json"], input=doc)
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    assert "3/2" in out["antipode"]["spectrum"] and out["ok"]


def test_comma_rep(runner):
    doc = build(runner, "comma", "--G", "S3", "--F", "S2")
    res = runner.invoke(main, ["rep", "-", "--json"], input=doc)
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    assert out["fusion"]["is_fusion"]
    assert sorted(s["fpdim"] for s in out["dimensions"]["simples"]) == ["1", "1", "2"]
    csv = runner.invoke(main, ["rep", "-", "--csv"], input=doc).output
    assert csv.startswith("class,irrep,")


def test_non_fusion_exit_code(runner):
    res = runner.invoke(main, ["rep", str(FIXTURES / "bimodule_c2.json")])
    assert res.exit_code == 4 and "(b)" in res.output


def test_inadmissible_theta(runner, tmp_path):
    ones = tmp_path / "ones.json"
    ones.write_text(json.dumps({"p0": "1"}))
    res = runner.invoke(main, ["wha", str(FIXTURES / "bimodule_c2.json"), "--theta", str(ones)])
    assert res.exit_code == 3
    assert "'2'" in res.output


def test_twisted_build_verifies(runner):
    doc = build(runner, "vec-g-omega", "--G", "C2", "--omega", "sign")
    assert '"sigma"' in doc
    res = runner.invoke(main, ["wha", "-", "--verify"], input=doc)
    assert res.exit_code == 0, res.output


def test_build_is_deterministic_and_round_trips(runner, tmp_path):
    doc = build(runner, "matched-pair")
    assert build(runner, "matched-pair") == doc
    out = tmp_path / "mp.json"
    assert runner.invoke(main, ["build", "matched-pair", "-o", str(out)]).exit_code == 0
    assert out.read_text() == doc


def test_info(runner):
    doc = build(runner, "no-siempre")
    res = runner.invoke(main, ["info", "-", "--json"], input=doc)
    assert res.exit_code == 0
    info = json.loads(res.output)
    assert info["boxes"] == 47 and not info["vacant"] and info["filling"]
    assert runner.invoke(main, ["info", "-", "--csv"], input=doc).output.startswith("id,t,b,l,r")


def test_unknown_family(runner):
    assert runner.invoke(main, ["build", "nope"]).exit_code == 2

"""Command-line interface: output shapes, determinism, exit codes."""

import json

import pytest

from sp4eis.cli import main
from sp4eis.scenario import ScenarioError, parse_toml_subset, scenario_from_dict

SCENARIO = """\
# pole scan for the Siegel family at its half-integer point
case = "siegel"
char_class = "quadratic"
modulus = 4
s0 = ["1/2"]
checks = ["poles"]

[[places]]
kind = "arch"
class = "trivial"
choice = "spherical"

[[places]]
kind = "nonarch"
class = "quadratic"
choice = "t2"

[[places]]
kind = "nonarch"
class = "quadratic"
choice = "t2"
"""


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_weyl_text(capsys):
    code, out = run(capsys, "weyl", "--case", "heisenberg")
    assert code == 0
    assert "sc2s" in out and "length=3" in out


def test_weyl_json_deterministic(capsys):
    _, out1 = run(capsys, "weyl", "--case", "all", "--full", "--json")
    _, out2 = run(capsys, "weyl", "--case", "all", "--full", "--json")
    assert out1 == out2
    data = json.loads(out1)
    assert [r["name"] for r in data["cases"]["siegel"]] == ["id", "c2", "sc2", "c2sc2"]
    assert len(data["group"]) == 8


def test_normfactor_golden(capsys):
    code, out = run(capsys, "normfactor", "--case", "heisenberg", "--w", "c1")
    assert code == 0
    assert out.strip() == \
        "L(s-1,chi) / (L(s+2,chi)*eps(s,chi)*eps(s+1,chi)*eps(s+2,chi))"
    code, out = run(capsys, "normfactor", "--case", "heisenberg", "--w", "id")
    assert out.strip() == "1"
    code, out = run(capsys, "normfactor", "--case", "siegel", "--w", "c2sc2",
                    "--char-class", "trivial")
    assert out.strip() == "L(s-1/2,1)*L(2s,1) / (L(s+3/2,1)*L(2s+1,1))"


def test_poles_inline_and_json(capsys):
    code, out = run(capsys, "poles", "--case", "heisenberg",
                    "--char-class", "trivial", "--s0", "2", "-1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "sp4eis-poles/1"
    r2, rm1 = data["reports"]
    assert r2["combined"]["pole_order"] == 1
    assert rm1["combined"]["vanishes_at_point"] is True
    # determinism
    _, out2 = run(capsys, "poles", "--case", "heisenberg",
                  "--char-class", "trivial", "--s0", "2", "-1", "--json")
    assert out == out2


def test_poles_place_flags(capsys):
    code, out = run(capsys, "poles", "--case", "heisenberg", "--s0", "-2",
                    "--place", "arch:trivial:spherical",
                    "nonarch:trivial:steinberg", "nonarch:trivial:steinberg",
                    "--json")
    assert code == 0
    data = json.loads(out)
    assert data["reports"][0]["combined"]["pole_order"] == 1


def test_poles_scenario_file(tmp_path, capsys):
    p = tmp_path / "scan.toml"
    p.write_text(SCENARIO, encoding="utf-8")
    code, out = run(capsys, "poles", "--scenario", str(p), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["scenario"]["modulus"] == 4
    assert data["reports"][0]["combined"]["pole_order"] == 1


def test_out_file(tmp_path, capsys):
    target = tmp_path / "weyl.json"
    code, _ = run(capsys, "weyl", "--json", "--out", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert data["schema"] == "sp4eis-weyl/1"


def test_verify_exit_codes(tmp_path, capsys):
    code, out = run(capsys, "verify", "H+")
    assert code == 0
    assert "PASS H+ overall" in out
    # a corrupted rule table makes verification fail with exit code 1
    import importlib.resources
    text = importlib.resources.files("sp4eis").joinpath("data/local_rules.txt").read_text()
    bad = text.replace(
        "pole|heisenberg|s,c2s,sc2s|nonarch|trivial|eq:-2|1|st_gl2|steinberg|",
        "pole|heisenberg|s,c2s,sc2s|nonarch|trivial|eq:-3|1|st_gl2|steinberg|")
    p = tmp_path / "bad_rules.txt"
    p.write_text(bad, encoding="utf-8")
    code, out = run(capsys, "verify", "H-", "--rules", str(p))
    assert code == 1
    assert "FAIL" in out


def test_scenario_parsing_fallback():
    data = parse_toml_subset(SCENARIO)
    assert data["case"] == "siegel"
    assert data["s0"] == ["1/2"]
    assert len(data["places"]) == 3
    sc = scenario_from_dict(data)
    assert sc.modulus == 4
    assert len(sc.profile.places) == 3


def test_scenario_validation():
    with pytest.raises(ScenarioError):
        scenario_from_dict({"case": "klingen"})
    with pytest.raises(ScenarioError):
        scenario_from_dict({"case": "siegel", "s0": ["x"]})
    with pytest.raises(ScenarioError):
        scenario_from_dict({"case": "siegel", "checks": ["podium"]})
    with pytest.raises(ScenarioError):
        scenario_from_dict({"case": "siegel", "char_class": "sgn"})


def test_scenario_default_profile():
    sc = scenario_from_dict({"case": "heisenberg", "char_class": "other"})
    assert sc.profile.places[0].kind == "arch"
    assert sc.profile.places[0].local_class.value == "other"

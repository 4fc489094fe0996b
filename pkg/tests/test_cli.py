import json

import pytest

from qwparrondo.cli import main, parse_angle
from qwparrondo.scenarios import dump_scenario, get_preset


@pytest.mark.parametrize(
    "text, value",
    [("pi", 3.141592653589793), ("3pi/2", 4.71238898038469), ("-pi/8", -0.39269908169872414),
     ("2*pi", 6.283185307179586), ("0.5", 0.5)],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, rel=1e-15)


def test_presets_lists_everything(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    assert "fig3c" in out and "fig5a-alt" in out and "fig2c-alt" in out


def test_run_preset_to_file(tmp_path):
    out = tmp_path / "fig3a.csv"
    assert main(["run", "--preset", "fig3a", "--steps", "1", "--out", str(out), "--emit-distribution"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "step,p_left,p_origin,p_right,payoff"
    assert len(lines) == 3
    assert float(lines[2].split(",")[4]) == pytest.approx(-4 / 9, abs=1e-12)
    dist = json.loads((tmp_path / "fig3a.distribution.json").read_text())
    assert [r["position"] for r in dist] == [-1, 0, 1]


def test_run_twice_is_byte_identical(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        main(["run", "--preset", "fig6c", "--steps", "50", "--out", str(p)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_run_scenario_file(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text(dump_scenario(get_preset("fig2c").config))
    assert main(["run", "--scenario", str(path), "--steps", "4"]) == 0
    assert capsys.readouterr().out.count("\n") == 6


def test_run_invalid_scenario_exit_1(tmp_path):
    data = json.loads(dump_scenario(get_preset("fig3c").config))
    data["k_term_convention"] = "as_printed"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert main(["run", "--scenario", str(path)]) == 1


def test_validate_coin(capsys):
    assert main(["validate-coin", "--kind", "qutrit", "--params", "pi,pi/2,pi,pi"]) == 0
    assert "unitary" in capsys.readouterr().out
    rc = main(["validate-coin", "--kind", "qutrit", "--params", "pi,pi/2,pi,pi",
               "--convention", "as-printed"])
    assert rc == 1
    assert "0.444" in capsys.readouterr().err
    assert main(["validate-coin", "--kind", "qubit", "--params=-45,45,0", "--unit", "deg"]) == 0


def test_oracle_check_cli(capsys):
    assert main(["oracle-check", "--preset", "fig3c", "--steps", "6"]) == 0
    assert capsys.readouterr().out.startswith("PASS")
    assert main(["oracle-check", "--preset", "fig3c", "--steps", "30"]) == 1


def test_sweep_cli(tmp_path):
    grid = {
        "coin_a": {"alpha": [3.141592653589793], "beta": [1.5707963267948966],
                   "gamma": [3.141592653589793], "theta": [3.141592653589793]},
        "coin_b": {"alpha": [1.5707963267948966], "beta": [1.5707963267948966],
                   "gamma": [4.71238898038469], "theta": [1.5707963267948966]},
        "steps": 500,
    }
    gpath, out = tmp_path / "g.json", tmp_path / "t.csv"
    gpath.write_text(json.dumps(grid))
    assert main(["sweep", "--grid", str(gpath), "--out", str(out)]) == 0
    header, row = out.read_text().splitlines()
    assert header.endswith("outcome_AAAA,outcome_BBBB,outcome_ABAB,paradox")
    assert row.endswith("Loss,Loss,Win,true")


def test_unknown_preset_exit_1():
    assert main(["run", "--preset", "fig99"]) == 1

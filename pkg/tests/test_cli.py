import json
import math
import subprocess
import sys

import pytest

from conway_doughnuts.angleform import TAU
from conway_doughnuts.cli import UsageError, parse_angle, run


@pytest.mark.parametrize("text, value", [
    ("30deg", TAU / 12),
    ("1/12tau", TAU / 12),
    ("1/12 tau", TAU / 12),
    ("0.5rad", 0.5),
    ("0.5", 0.5),
    ("1/4τ", TAU / 4),
])
def test_parse_angle(text, value):
    assert math.isclose(parse_angle(text), value, rel_tol=1e-15)


def test_tau_fractions_round_once():
    assert parse_angle("1/12tau") == TAU * 1 / 12
    assert parse_angle("1/4tau") == math.pi / 2


@pytest.mark.parametrize("text", ["deg", "abc", "1/0tau", "3 furlongs"])
def test_parse_angle_rejects(text):
    with pytest.raises(UsageError):
        parse_angle(text)


def test_check_morley(capsys):
    out = run(["check", "morley", "--a", "30deg", "--b", "20deg", "--c", "10deg"])
    assert out.code == 0 and "exists" in out.summary
    assert json.loads(capsys.readouterr().out)["exists"] is True


def test_check_infers_missing_angle():
    assert run(["check", "conway", "--a", "1/24tau", "--b", "1/24tau"]).code == 0


def test_check_constraint_violation():
    out = run(["check", "morley", "--a", "30deg", "--b", "30deg", "--c", "30deg"])
    assert out.code == 2


def test_check_spec_file(tmp_path):
    from conway_doughnuts.diagram import catalog
    path = tmp_path / "spec.json"
    path.write_text(catalog("bisector").to_json())
    assert run(["check", str(path), "--output", str(tmp_path / "r.json")]).code == 0
    assert json.loads((tmp_path / "r.json").read_text())["name"] == "bisector"


def test_unknown_inputs():
    assert run(["check", "nothing-here"]).code == 2
    assert run(["frobnicate"]).code == 2
    assert run(["identity", "--n"]).code == 2


def test_identity(capsys):
    assert run(["identity", "--n", "32"]).code == 0
    assert json.loads(capsys.readouterr().out)["max_residual"] < 1e-12
    assert run(["identity", "--n", "32", "--perturb", "1e-6"]).code == 4


def test_search_exit_codes(capsys):
    assert run(["search", "--n", "5"]).code == 3
    assert json.loads(capsys.readouterr().out)["solution_count"] == 0
    assert run(["search", "--n", "4"]).code == 0
    assert run(["search", "--n", "2"]).code == 4


def test_doughnut_json_and_svg(tmp_path, capsys):
    assert run(["doughnut", "--n", "4", "--a", "1/24tau", "--b", "1/24tau", "--c", "1/24tau"]).code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["hole"]["vertex_count"] == 3
    out = run(["doughnut", "--n", "6", "--fill", "--out", "svg", "--out-dir", str(tmp_path)])
    assert out.code == 0 and (tmp_path / "doughnut-6-filled.svg").exists()
    out = run(["doughnut", "--n", "10", "--bend", "0", "--out", "svg", "--out-dir", str(tmp_path)])
    assert out.code == 0 and (tmp_path / "doughnut-10-bent0.svg").exists()


def test_out_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("DOUGHNUT_OUT_DIR", str(tmp_path))
    assert run(["pack", "--s", "1.2", "--t", "0.9", "--out", "svg"]).code == 0
    assert (tmp_path / "packing.svg").exists()


def test_pack(capsys):
    assert run(["pack", "--s", "2", "--t", "3", "--rows", "3", "--cols", "3"]).code == 0
    assert json.loads(capsys.readouterr().out)["tangency_residual"] < 1e-9
    assert run(["pack", "--s", "-1", "--t", "1"]).code == 4


def test_flipbook(tmp_path):
    out = run(["flipbook", "--from", "8", "--to", "2", "--out-dir", str(tmp_path)])
    assert out.code == 0
    assert sorted(p.name for p in tmp_path.iterdir())[0] == "frame001_n08.svg"
    assert len(list(tmp_path.iterdir())) == 7


def test_asymptote(tmp_path):
    out = run(["asymptote", "--corner-angle", "1/4tau", "--n-list", "10", "20", "40",
               "--out-dir", str(tmp_path)])
    assert out.code == 0 and out.payload["monotone"]
    for ext in ("json", "csv", "png"):
        assert (tmp_path / f"asymptote.{ext}").stat().st_size > 0
    header = (tmp_path / "asymptote.csv").read_text().splitlines()[0]
    assert header == "n,index,x,y,distance"


def test_seeded_runs_are_byte_identical(tmp_path):
    for k in range(2):
        run(["--seed", "3", "doughnut", "--n", "7", "--output", str(tmp_path / f"d{k}.json")])
        run(["--seed", "3", "doughnut", "--n", "7", "--out", "svg",
             "--output", str(tmp_path / f"d{k}.svg")])
    assert (tmp_path / "d0.json").read_bytes() == (tmp_path / "d1.json").read_bytes()
    assert (tmp_path / "d0.svg").read_bytes() == (tmp_path / "d1.svg").read_bytes()
    run(["--seed", "4", "doughnut", "--n", "7", "--output", str(tmp_path / "e.json")])
    assert (tmp_path / "e.json").read_bytes() != (tmp_path / "d0.json").read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conway_doughnuts", "identity", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["holds"] is True

import json
import shutil

import pytest

from ncgears.cli import main
from ncgears.config import key_line, parse_config
from ncgears.errors import ConfigError

GOOD = """{
  "transmission": {"name": "sinusoidal", "parameters": {"b": 0.3}},
  "m": 2,
  "z1": 12,
  "outputs": ["report"]
}
"""


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_defaults():
    cfg = parse_config(GOOD)
    assert cfg.z2 == 12 and cfg.alpha_deg == 20.0 and cfg.h_f_over_m == 1.2
    assert cfg.rack().rho == pytest.approx(0.6)


@pytest.mark.parametrize("text,key,line", [
    (GOOD.replace('"z1": 12', '"z1": 12.5'), "z1", 4),
    (GOOD.replace('"m": 2', '"m": "two"'), "m", 3),
    (GOOD.replace('"m": 2', '"m": 2, "colour": 1'), "colour", 3),
    (GOOD.replace('["report"]', '["png"]'), "outputs", 5),
])
def test_config_errors_are_line_anchored(text, key, line):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.details["line"] == line and exc.value.details["key"] == key


def test_malformed_json():
    with pytest.raises(ConfigError) as exc:
        parse_config('{\n "m": 2,\n}')
    assert exc.value.details["line"] == 3


def test_key_line():
    assert key_line(GOOD, "z1") == 4 and key_line(GOOD, "nothing") == 0


def test_invalid_transmission_exit(tmp_path, capsys, configs):
    code, _, err = run(capsys, "synthesize", configs / "invalid_b12.json", "--out", tmp_path)
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "InvalidTransmission" and doc["invariant"] == "psi' > 0"
    assert doc["line"] >= 1


def test_unsupported_tooth_counts(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text(GOOD.replace('"z1": 12', '"z1": 12, "z2": 24'))
    code, _, err = run(capsys, "check-undercut", p)
    doc = json.loads(err)
    assert code == 2 and doc["error"] == "UnsupportedConfig" and doc["key"] == "z2"
    assert doc["line"] == 4


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "synthesize", tmp_path / "none.json")
    assert code == 2 and json.loads(err)["error"] == "IOError"


def test_check_undercut_circular(capsys, configs):
    code, out, _ = run(capsys, "check-undercut", configs / "circular_z20.json")
    assert code == 0
    assert out.count(" yes") == 0
    assert '"undercut_flanks": 0' in out


def test_synthesize_writes_artifacts_deterministically(tmp_path, capsys, configs):
    outs = []
    for name in ("a", "b"):
        d = tmp_path / name
        code, out, _ = run(capsys, "synthesize", configs / "sinusoidal_z14.json", "--out", d,
                           "--samples", 200)
        assert code == 0
        outs.append(d)
    files = ["gears.svg", "gears.dxf", "report.json", "report.txt", "mesh_report.json",
             "base_curves.svg"]
    for f in files:
        assert (outs[0] / f).read_bytes() == (outs[1] / f).read_bytes()
    rep = json.loads((outs[0] / "report.json").read_text())
    assert rep["center_distance"] == 28.4384739
    assert len(rep["flanks"]) == 56
    seen = {(r["gear"], r["k"], r["side"]) for r in rep["flanks"]}
    assert len(seen) == 56
    free = sorted((r["k"], r["side"]) for r in rep["flanks"]
                  if r["gear"] == "drive" and r["status"] == "free")
    assert free == [(2, "-"), (14, "+")]
    assert rep["tooth_middles"][7]["chi"] == 3.14159265
    text = (outs[0] / "report.txt").read_text()
    assert "0.674064555" in text and "-0.0793920485" in text


def test_mesh_verify_command(tmp_path, capsys, configs):
    code, out, _ = run(capsys, "mesh-verify", configs / "circular_z20.json", "--samples", 100,
                       "--out", tmp_path)
    assert code == 0
    doc = json.loads(out)
    assert doc["samples"] == 100 and doc["max_deviation"] < 1e-9
    assert (tmp_path / "mesh_report.json").exists()


def test_export_command(tmp_path, capsys, configs):
    code, _, err = run(capsys, "export", configs / "circular_z20.json", "--out", tmp_path)
    assert code == 2 and json.loads(err)["error"] == "ConfigError"
    code, out, _ = run(capsys, "export", configs / "circular_z20.json", "--dxf", "--svg",
                       "--pose", 9, "--out", tmp_path)
    assert code == 0
    assert (tmp_path / "gears.dxf").read_text().startswith("0\nSECTION")
    assert (tmp_path / "gears.svg").read_text().startswith("<?xml")


def test_tolerance_flags(tmp_path, capsys, configs):
    code, _, _ = run(capsys, "check-undercut", configs / "circular_z20.json",
                     "--tol-quad", 1e-9, "--tol-root", 1e-11)
    assert code == 0
    code, _, err = run(capsys, "check-undercut", configs / "circular_z20.json", "--tol-quad", -1)
    assert code == 2


def test_module_entry_point(configs):
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "ncgears", "check-undercut",
                          str(configs / "circular_z20.json")], capture_output=True, text=True)
    assert res.returncode == 0 and "Tooth middles" in res.stdout

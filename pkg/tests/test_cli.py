import json
import subprocess
import sys

import pytest

from bordered_hfk.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_ranks(capsys):
    code, out, _ = run(["compute", "-i", "trefoil_left", "--emit", "ranks"], capsys)
    assert code == 0 and out.strip() == "generators: 3, hat_rank: 3"


def test_compute_json_shape(capsys, tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps({"format": "hfk-plat-v1", "caps": 1, "events": [{"min": {}}]}))
    code, out, _ = run(["compute", "-i", str(f), "--json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"input", "generators", "hat_rank", "levels"}
    assert data["generators"] == 1 and data["hat_rank"] == 1
    assert data["levels"] == [{"n": 1, "generators": 1, "verified": False}]


def test_text_input_file(capsys, tmp_path):
    f = tmp_path / "k.txt"
    f.write_text("caps 1\nx1-\nmin\n")
    code, out, _ = run(["compute", "-i", str(f)], capsys)
    assert code == 0 and "hat_rank: 1" in out


def test_invalid_input_exit_1(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"caps": 1, "events": [{"crossing": {"pos": 5, "sign": 1}}, {"min": {}}]}))
    code, _, err = run(["compute", "-i", str(f)], capsys)
    assert code == 1 and "events[0].crossing.pos" in err
    f.write_text("{not json")
    assert run(["compute", "-i", str(f)], capsys)[0] == 1
    assert run(["compute", "-i", "missing-file"], capsys)[0] == 1
    assert run(["frobnicate"], capsys)[0] == 1


def test_depth_cap_exit_3(capsys, monkeypatch):
    assert run(["compute", "-i", "figure8", "--depth-cap", "1"], capsys)[0] == 3
    monkeypatch.setenv("HFK_DEPTH_CAP", "1")
    assert run(["compute", "-i", "figure8"], capsys)[0] == 3
    monkeypatch.setenv("HFK_DEPTH_CAP", "64")
    assert run(["compute", "-i", "figure8"], capsys)[0] == 0


def test_verify_pass_and_fail_codes(capsys):
    code, out, _ = run(["verify", "--target", "crossing-pos", "--n", "2", "--pos", "1"], capsys)
    assert code == 0 and "pass" in out
    code, out, _ = run(["verify", "--target", "trivial", "--n", "1"], capsys)
    assert code == 0
    code, out, _ = run(["verify", "--target", "min", "--n", "2"], capsys)
    assert code == 0 and out.count("pass") == 2
    code, out, _ = run(["verify", "--target", "algebra", "--n", "2"], capsys)
    assert code == 0
    code, out, _ = run(["verify", "--target", "d", "--n", "3"], capsys)
    assert code == 0
    assert run(["verify", "--target", "min", "--n", "1"], capsys)[0] == 1


def test_verify_reports_failures_with_exit_2(capsys):
    # interior crossing positions violate the structure equation
    code, out, _ = run(["verify", "--target", "crossing-neg", "--n", "2", "--pos", "2", "--exp-cap", "1"], capsys)
    assert code == 2 and "FAIL" in out


def test_verify_each_reports_level(capsys):
    code, _, err = run(["compute", "-i", "unknot", "--verify-each"], capsys)
    assert code == 0
    code, _, err = run(["compute", "-i", "unknot_r1_pos", "--verify-each"], capsys)
    assert code == 0
    # the first interior crossing fails its curvature check
    code, _, err = run(["compute", "-i", "trefoil_left", "--verify-each"], capsys)
    assert code == 2 and "level 1" in err


def test_states(capsys):
    code, out, _ = run(["states", "-i", "trefoil_left", "--level", "closed", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["level"] == "closed" and data["count"] == 3 == len(data["states"])
    code, out, _ = run(["states", "-i", "trefoil_left", "--level", "upper", "--json"], capsys)
    assert json.loads(out)["count"] == 3
    code, out, _ = run(["states", "-i", "trefoil_left", "--level", "partial", "--top", "0", "--bottom", "1"], capsys)
    assert code == 0 and out.startswith("partial states:")
    assert run(["states", "-i", "trefoil_left", "--level", "partial", "--top", "0", "--bottom", "99"], capsys)[0] == 1


def test_builtin(capsys):
    code, out, _ = run(["builtin", "--list"], capsys)
    assert code == 0 and "figure8" in out
    code, out, _ = run(["builtin", "--name", "unknot"], capsys)
    assert json.loads(out) == {"format": "hfk-plat-v1", "caps": 1, "events": [{"min": {}}]}
    assert run(["builtin", "--name", "nope"], capsys)[0] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bordered_hfk", "compute", "-i", "unknot"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "generators: 1, hat_rank: 1"

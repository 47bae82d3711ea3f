import io
import json
import pathlib
import subprocess
import sys

import pytest

from cevian_circles.cli import SEED_ENV, run_cli
from cevian_circles.report import strip_timing

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_list_has_header_and_one_row_per_identity():
    code, out, _ = run("list")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 23
    assert lines[0].split()[0] == "ID"
    assert lines[-1].startswith("NEG_CONTROL")
    code, out, _ = run("list", "--format", "json")
    assert len(json.loads(out)) == 22


def test_verify_matches_golden_report():
    code, out, _ = run("verify", "THM_4_1", "--n", "20", "--seed", "3")
    assert code == 0
    golden = json.loads((GOLDEN / "verify_THM_4_1_n20_seed3.json").read_text())
    assert strip_timing(json.loads(out)) == golden


def test_verify_text_format():
    code, out, _ = run("verify", "THM_5_1", "--n", "10", "--format", "text")
    assert code == 0 and "THM_5_1" in out and "pass" in out


def test_false_identity_alone_exits_one():
    code, out, err = run("verify", "NEG_CONTROL", "--n", "30")
    assert code == 1
    assert json.loads(out)["results"][0]["pass_count"] == 0
    assert "NEG_CONTROL" in err and "worst triangle" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "NOPE"),
        ("verify", "THM_4_1", "--n", "0"),
        ("verify", "THM_4_1", "--width", "10"),
        ("verify", "THM_4_1", "--seed", "-3"),
        ("verify", "THM_2_1", "--constraint", "general"),
        ("verify", "THM_4_1", "--constraint", "angle_b=180"),
        ("figure", "THM_4_1"),
        ("bogus",),
        (),
    ],
)
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_config_file_and_flag_precedence(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("n = 7\nseed = 5\nformat = json\n")
    code, out, _ = run("verify", "THM_4_1", "--config", str(config))
    doc = json.loads(out)
    assert code == 0 and doc["run"]["seed"] == 5 and doc["results"][0]["n"] == 7
    code, out, _ = run("verify", "THM_4_1", "--config", str(config), "--n", "3")
    assert json.loads(out)["results"][0]["n"] == 3
    config.write_text("colour = red\n")
    assert run("verify", "THM_4_1", "--config", str(config))[0] == 2


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv(SEED_ENV, "11")
    _, out, _ = run("verify", "THM_4_1", "--n", "2")
    assert json.loads(out)["run"]["seed"] == 11
    _, out, _ = run("verify", "THM_4_1", "--n", "2", "--seed", "4")
    assert json.loads(out)["run"]["seed"] == 4
    monkeypatch.setenv(SEED_ENV, "x")
    assert run("verify", "THM_4_1", "--n", "2")[0] == 2


def test_out_file(tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run("verify", "LEM_5_1", "--n", "5", "--out", str(target))
    assert code == 0 and out == "" and json.loads(target.read_text())["results"][0]["id"] == "LEM_5_1"
    assert run("verify", "LEM_5_1", "--n", "5", "--out", str(tmp_path / "no" / "r.json"))[0] == 1


def test_width_ladder():
    code, out, _ = run("verify", "THM_8_3", "--n", "10", "--width", "150", "--width", "300")
    result = json.loads(out)["results"][0]
    assert code == 0 and result["widths"] == [150, 300]
    assert result["per_width"]["300"]["max_rel_residual"] <= 1e-60


def test_figure(tmp_path):
    target = tmp_path / "f.svg"
    assert run("figure", "THM_6_3", "--out", str(target))[0] == 0
    assert target.read_text().startswith("<?xml")
    assert run("figure", "THM_5_1", "--out", str(target), "--triangle", "0,3;0,0;4,0")[0] == 0
    assert run("figure", "THM_5_1", "--out", str(target), "--triangle", "0,0;1,1;2,2")[0] == 1
    assert run("figure", "THM_2_1", "--out", str(target), "--triangle", "0,0;10,0;1,1")[0] == 1


def test_invariants_and_oracles():
    assert run("invariants")[0] == 0
    code, out, _ = run("oracles", "--n", "50")
    assert code == 0 and "nagel_cevian_lengths" in out


def test_permute():
    code, out, _ = run("permute", "THM_8_1", "--n", "20")
    assert code == 0 and "1 2 3 4 5 6" in out.replace(",", " ").replace("(", "").replace(")", "")
    assert run("permute", "NEG_CONTROL", "--n", "20")[0] == 1
    assert run("permute", "LEM_5_1")[0] == 2


def test_stress_reports_without_judging():
    code, out, _ = run("stress", "THM_4_1", "--n", "20", "--format", "json")
    assert code == 0 and json.loads(out)["results"][0]["id"] == "THM_4_1"


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "cevian_circles", "list"], capture_output=True, text=True, check=False
    )
    assert done.returncode == 0 and len(done.stdout.splitlines()) == 23

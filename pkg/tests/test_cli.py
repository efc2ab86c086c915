import json
import math

import pytest

from vpstealth.checks import run_checks
from vpstealth.cli import EXIT_USAGE, main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_grid_syntax():
    assert parse_grid("0:1:5") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_grid("0.1, 0.3") == [0.1, 0.3]


@pytest.mark.parametrize("argv", [
    ["exponents"],
    ["region", "--beta-grid", "0:1:11"],
    ["rates", "--q", "0.2"],
    ["oracle", "--n", "8", "--m", "4", "--k", "2"],
    ["simulate", "--n", "128", "--m", "8", "--trials", "20"],
])
def test_commands_succeed_and_repeat(capsys, argv):
    c1, o1, _ = run(capsys, *argv)
    c2, o2, _ = run(capsys, *argv)
    assert c1 == 0 and o1 == o2
    assert o1.startswith("# config: ")


def test_json_embeds_config(capsys):
    _, out, _ = run(capsys, "region", "--beta-grid", "0,1", "--format", "json")
    doc = json.loads(out)
    assert doc["config"]["beta_grid"] == "0,1"
    assert doc["rows"] == [[0.0, 0.5, "a <= k"], [1.0, 1.0, "a = b"]]


def test_config_file_then_flags(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"q": 0.3, "delta": 0.04}))
    _, out, _ = run(capsys, "--config", str(cfg), "region", "--delta", "0.02", "--format", "json")
    doc = json.loads(out)
    assert doc["config"]["q"] == 0.3 and doc["config"]["delta"] == 0.02


def test_bits_units(capsys):
    _, nats, _ = run(capsys, "exponents", "--format", "json")
    _, bits, _ = run(capsys, "exponents", "--units", "bits", "--format", "json")
    a, b = json.loads(nats)["summary"], json.loads(bits)["summary"]
    assert b["r_alpha_max"] == pytest.approx(a["r_alpha_max"] / math.log(2), rel=1e-14)


def test_output_path(tmp_path, capsys):
    path = tmp_path / "r.csv"
    assert main(["region", "--output-path", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert path.read_text().count("\n") == 1 + 1 + 1 + 101


@pytest.mark.parametrize("argv,msg", [
    (["oracle", "--n", "21", "--m", "2"], "n <= 20"),
    (["simulate", "--n", "16", "--m", "2", "--trials", "0"], "trials"),
    (["simulate", "--n", "16"], "--m"),
    (["region", "--beta-grid", "1:0:3"], "increasing"),
    (["rates", "--b", "1.0"], "--beta"),
])
def test_usage_errors(capsys, argv, msg):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and msg in err


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"gamma": 1}')
    assert run(capsys, "--config", str(cfg), "region")[0] == EXIT_USAGE


def test_validate_battery_passes(capsys):
    code, out, _ = run(capsys, "validate")
    assert code == 0 and "FAIL" not in out


def test_checks_all_pass():
    failed = [r for r in run_checks() if not r.passed]
    assert not failed, failed

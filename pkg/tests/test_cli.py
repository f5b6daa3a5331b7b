import json
import subprocess
import sys

import pytest

from semistab.cli import main

GOOD = '{"d": 1, "p": 0, "t": 0, "a": 1, "t_v": 0, "a_v": 0}'


def run(capsys, *argv):
    status = main(list(argv))
    return status, capsys.readouterr().out


def test_jn(capsys):
    status, out = run(capsys, "jn", "2")
    assert status == 0
    assert json.loads(out) == {"n": 2, "J": {"factored": "2^3 * 3", "decimal": "24"}}


def test_bounds_inline_and_file(capsys, tmp_path):
    status, out = run(capsys, "bounds", "--input", GOOD)
    obj = json.loads(out)
    assert status == 0 and obj["N"]["decimal"] == "12" and obj["Q_bound"] == 3
    path = tmp_path / "data.json"
    path.write_text(GOOD)
    status, again = run(capsys, "bounds", "--input", str(path))
    assert again == out


def test_text_format(capsys):
    status, out = run(capsys, "bounds", "--input", GOOD, "--format", "text")
    assert status == 0
    assert "N: 2^2 * 3 = 12" in out


def test_advice(capsys):
    status, out = run(capsys, "advice", "--input", GOOD)
    kinds = [f["kind"] for f in json.loads(out)["advice"]]
    assert status == 0 and kinds.count("cyclic-recipe") == 4


def test_snf(capsys):
    status, out = run(capsys, "snf", "--input", '{"matrix": [[2, 4], [6, 8]]}')
    assert status == 0 and json.loads(out)["diagonal"] == ["2", "4"]
    status, out = run(capsys, "snf", "--input", '{"matrix": [[2, 4], [6, 8]], "ring": "Z_(3)"}')
    assert json.loads(out)["diagonal"] == ["1", "1"]


def test_perfectize(capsys):
    inp = json.dumps({"form": {"ring": "Z_(3)", "kind": "alternating", "gram": [[0, 3], [-3, 0]]}, "generators": [[[-1, 0], [0, -1]]]})
    status, out = run(capsys, "perfectize", "--input", inp)
    assert status == 0
    assert json.loads(out)["form"]["gram"] == [["0", "1"], ["-1", "0"]]


def test_sp_orders(capsys):
    status, out = run(capsys, "sp-orders", "--m", "1", "--ell", "5", "--exhaustive")
    obj = json.loads(out)
    assert status == 0 and obj["orders"] == [1, 2, 3, 4, 5, 6, 10] and obj["group_order"] == "120"


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds"],
        ["bounds", "--input", "{not json"],
        ["bounds", "--input", '{"d": 1}'],
        ["bounds", "--input", "/no/such/file.json"],
        ["jn", "-1"],
        ["sp-orders", "--m", "1", "--ell", "4"],
        ["sp-orders", "--m", "2", "--ell", "5", "--exhaustive", "--budget", "10"],
        ["nonsense"],
    ],
)
def test_errors_exit_2_with_json(capsys, argv):
    status, out = run(capsys, *argv)
    assert status == 2
    assert "message" in json.loads(out)["error"]


def test_repeat_runs_are_byte_identical():
    cmd = [sys.executable, "-m", "semistab", "sp-orders", "--m", "2", "--ell", "7", "--samples", "2000", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_verify_quick(capsys):
    status, out = run(capsys, "verify", "--quick", "--suite", "j-values", "--suite", "elliptic", "--suite", "growth")
    obj = json.loads(out)
    assert status == 0 and obj["passed"]
    assert [s["suite"] for s in obj["suites"]] == ["elliptic", "growth", "j-values"]

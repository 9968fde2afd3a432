from __future__ import annotations

import json
import subprocess
import sys

import pytest

from coxspec.cli import COMMANDS, COMMAND_FLAGS, main, run


def ok(*argv: str) -> str:
    status, out, err = run(list(argv))
    assert status == 0, err
    assert err == ""
    return out


def test_charpoly_e6():
    assert ok("charpoly", "E6") == "λ^6 + λ^5 − λ^3 + λ + 1\n"
    assert ok("charpoly", "E6", "--ascii") == "x^6 + x^5 - x^3 + x + 1\n"


def test_ascii_output_is_ascii():
    for argv in (("charpoly", "E6", "--ascii"), ("defect", "E6~", "--ascii"), ("slodowy", "--ascii"),
                 ("series", "T23", "--r", "7", "--radius", "--ascii")):
        assert ok(*argv).isascii()


def test_series_radius():
    lines = ok("series", "T23", "--r", "7", "--radius").splitlines()
    assert "1.176281" in lines[-1]
    assert lines[0].startswith("λ^10 + λ^9")


def test_bicolored_defect():
    assert ok("defect", "D4~", "--orientation", "bicolored").splitlines()[0] == "y1 + y2 + y3 + y4 − 2·x0"


@pytest.mark.parametrize("argv", [("charpoly", "E6"), ("charpoly", "T[2,3,7]"), ("numbers", "E8~"),
                                  ("mckay", "T"), ("defect", "G21~"), ("poincare", "E8", "--truncate", "12")])
def test_json_round_trip(argv):
    text = ok(*argv, "--format", "json")
    data = json.loads(text)
    assert data["schema"] == 1 and data["command"] == argv[0]
    assert json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n" == text


def test_charpoly_json_coefficients():
    data = json.loads(ok("charpoly", "E6", "--format", "json"))
    assert data["diagram"] == "E6"
    assert data["charpoly"] == {"coefficients": [1, 1, 0, -1, 0, 1, 1], "text": "λ^6 + λ^5 − λ^3 + λ + 1"}


@pytest.mark.parametrize("argv", [("charpoly", "X9"), ("charpoly", "A3~"), ("mckay", "Q"), ("poincare", "T[2,3,7]"),
                                  ("defect", "E6")])
def test_domain_errors_exit_1(argv):
    status, out, err = run(list(argv))
    assert status == 1 and out == ""
    assert err.startswith("coxspec: error[domain]: ") and err.count("\n") == 1


@pytest.mark.parametrize("argv", [(), ("frobnicate",), ("charpoly",), ("charpoly", "E6", "--format", "xml"),
                                  ("spectrum", "E6", "--tol", "abc"), ("spectrum", "E6", "--tol", "-1"),
                                  ("regular", "D4~"), ("regular", "D4~", "--vector", "1,2"),
                                  ("charpoly", "E6", "--vector", "1"), ("slodowy", "E6"),
                                  ("poincare", "E6", "--truncate", "-3"), ("charpoly", "--file", "/nonexistent")])
def test_usage_errors_exit_2(argv):
    status, out, err = run(list(argv))
    assert status == 2 and out == ""
    assert err.startswith("coxspec: error[usage]: ") and err.count("\n") == 1


def test_every_command_has_a_flag_schema():
    assert set(COMMAND_FLAGS) == set(COMMANDS)


def test_tables_match_goldens():
    status, out, _ = run(["tables"])
    assert status == 0
    assert all(line.endswith(": match") for line in out.splitlines())


def test_file_input(tmp_path):
    path = tmp_path / "quiver.txt"
    path.write_text("# D4 as a star\nedge c a\nedge c b\nedge c d\n", encoding="utf-8")
    assert ok("charpoly", "--file", str(path)) == ok("charpoly", "D4")


def test_regular_with_vector():
    out = ok("regular", "D4~", "--vector", "2,1,1,1,1")
    assert "status: regular" in out
    out = ok("regular", "D4~", "--vector", "0,1,0,0,0")
    assert "status: not-regular" in out and "witness" in out
    out = ok("regular", "*[5]", "--vector", "2,1,1,1,1,1")
    assert "verdict: condition holds" in out


def test_every_command_runs():
    samples = {"charpoly": ("G2",), "spectrum": ("T[2,3,7]",), "jordan": ("D4~",), "numbers": ("F4",),
               "roots": ("E7",), "defect": ("E7~",), "regular": ("E6~", "--vector", "3,1,1,1,2,2,2"),
               "poincare": ("D5",), "mckay": ("BD3",), "slodowy": (), "orbit": ("E6",),
               "series": ("T33", "--r", "5"), "tables": ()}
    assert set(samples) == set(COMMANDS)
    for cmd, rest in samples.items():
        assert ok(cmd, *rest).strip()


def test_main_and_module_entry(capsys):
    assert main(["charpoly", "A2"]) == 0
    assert capsys.readouterr().out == "λ^2 + λ + 1\n"
    proc = subprocess.run([sys.executable, "-m", "coxspec", "charpoly", "Z9"], capture_output=True, text=True)
    assert proc.returncode == 1 and "error[domain]" in proc.stderr

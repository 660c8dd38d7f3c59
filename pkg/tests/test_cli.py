import json
import subprocess
import sys

import pytest

from daw.cli import parse_diagram, run
from daw.diagrams import Diagram
from daw.groups import FiniteGroup
from daw.suites import SuiteConfig, run_suite


def out_json(tmp_path, argv, name="out.json"):
    path = tmp_path / name
    code = run(argv + ["--out", str(path)])
    return code, json.loads(path.read_text()) if path.exists() else None


def test_enumerate_tl3(tmp_path):
    code, obj = out_json(tmp_path, ["enumerate", "--flavor", "tl", "--n", "3"])
    assert code == 0 and obj["count"] == 5 and len(obj["diagrams"]) == 5


def test_enumerate_table(capsys):
    assert run(["enumerate", "--flavor", "brauer", "--n", "2"]) == 0
    assert capsys.readouterr().out.startswith("3 brauer diagrams")


def test_size_cap_exit_3():
    assert run(["enumerate", "--flavor", "rookbrauer", "--n", "9"]) == 3


@pytest.mark.parametrize("argv", [
    ["enumerate", "--flavor", "spider", "--n", "2"],
    ["enumerate", "--flavor", "tl"],
    ["tor", "--flavor", "tl", "--n", "2", "--ring", "F6"],
    ["tor", "--flavor", "tl", "--n", "2", "--qmax", "-1"],
    ["compose", "--flavor", "tl", "--n", "2", "L1-R2 L2-R1", "L1-R1 L2-R2"],
    ["compose", "--n", "2", "L1-Q2", "L1-R1 L2-R2"],
    ["verify", "tl", "--ring", "F2"],
    ["verify", "stability", "--n", "3", "--group", "C2"],
    ["verify", "motzkin", "--n", "2", "--epsilon", "0"],
])
def test_configuration_errors_exit_2(argv):
    assert run(argv) == 2


def test_parse_diagram():
    c2 = FiniteGroup.cyclic(2)
    assert parse_diagram("L1-R2, L2-R1", 2, FiniteGroup.trivial()) == Diagram.from_edges(2, [("L1", "R2"), ("L2", "R1")])
    assert parse_diagram("l1-l2[1] R1-R2", 2, c2) == Diagram.from_edges(2, [("L1", "L2", 1), ("R1", "R2")], c2)


def test_compose_loop(tmp_path):
    argv = ["compose", "--flavor", "tl", "--n", "2", "--delta", "3", "L1-L2 R1-R2", "L1-L2 R1-R2"]
    code, obj = out_json(tmp_path, argv)
    assert code == 0 and obj["scalar"] == "3"


def test_algebra_export_and_cache(tmp_path):
    cache = tmp_path / "cache"
    argv = ["algebra", "export", "--flavor", "brauer", "--n", "2", "--cache-dir", str(cache)]
    code, first = out_json(tmp_path, argv, "a.json")
    assert code == 0 and len(first["basis"]) == 3
    files = list(cache.iterdir())
    assert len(files) == 1
    code, second = out_json(tmp_path, argv, "b.json")
    assert second == first and list(cache.iterdir()) == files
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_tor_and_compare(tmp_path):
    code, b = out_json(tmp_path, ["tor", "--flavor", "brauer", "--n", "2", "--ring", "F2", "--qmax", "4"], "b.json")
    assert code == 0 and b["dims"] == [1, 1, 1, 1, 1]
    code, s = out_json(tmp_path, ["tor", "--target", "semidirect", "--n", "2", "--ring", "F2", "--qmax", "4"], "s.json")
    assert s["dims"] == b["dims"]
    code, rep = out_json(tmp_path, ["compare", str(tmp_path / "b.json"), str(tmp_path / "s.json")], "c.json")
    assert code == 0 and rep["equal_through"] == 4


def test_tor_integer_target_group(tmp_path):
    code, obj = out_json(tmp_path, ["tor", "--target", "group", "--group", "C2", "--ring", "Z", "--qmax", "2"])
    assert code == 0 and obj["invariants"][1] == {"free": 0, "torsion": [2]}


def test_compare_missing_file(tmp_path):
    assert run(["compare", str(tmp_path / "x.json"), str(tmp_path / "y.json")]) == 2


def test_verify_exit_codes(tmp_path):
    code, obj = out_json(tmp_path, ["verify", "tl", "--n", "3"])
    assert code == 0 and obj["status"] == "pass"
    code, obj = out_json(tmp_path, ["verify", "motzkin"])
    assert code == 1 and obj["status"] == "fail"


def test_verify_deterministic():
    a = run_suite("braid", SuiteConfig(seed=7)).to_json(timing=False)
    b = run_suite("braid", SuiteConfig(seed=7)).to_json(timing=False)
    assert a == b


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "daw", "enumerate", "--flavor", "tl", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("2 tl diagrams")

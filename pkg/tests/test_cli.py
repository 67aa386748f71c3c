import json
import subprocess
import sys

import pytest

from hedet.cli import run
from hedet.exponential import parse_functions
from hedet.graph import cycle, parse_dimacs, write_dimacs


def test_verify_c7(tmp_path, capsys):
    report = tmp_path / "out.json"
    assert run(["verify", "--seed", "c7", "--q", "3", "--report", str(report)]) == 1
    data = json.loads(report.read_text())
    assert data["verdict"].startswith("not a counterexample")
    assert {c["name"]: c["status"] for c in data["checks"]}["h_lower"] == "pass"
    assert "verdict:" in capsys.readouterr().out


def test_verify_c5_witness(tmp_path):
    report = tmp_path / "c5.json"
    assert run(["verify", "--seed", "c5", "--q", "2", "--report", str(report)]) == 1
    emb = next(c for c in json.loads(report.read_text())["checks"] if c["name"] == "embedding")
    assert emb["status"] == "fail" and emb["witness"]["alpha"] == 2


def test_verify_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(["verify", "--seed", "c5", "--q", "2", "--no-timings", "--report", str(path)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_unknown_exit(tmp_path):
    assert run(["verify", "--seed", "c7", "--q", "3", "--budget", "1"]) == 3


def test_chif(capsys):
    assert run(["chif", "--seed", "groetzsch"]) == 0
    assert capsys.readouterr().out.strip() == "29/10"


@pytest.mark.parametrize("argv,out", [
    (["chi", "--seed", "petersen"], "3"),
    (["chi", "--seed", "c7", "--q", "3", "--graph", "H"], "12"),
    (["alpha", "--seed", "petersen"], "4"),
    (["oddgirth", "--seed", "c7"], "7"),
    (["oddgirth", "--seed", "c6"], "none"),
    (["sizes", "--p", "83", "--q", "41"], "|V(G)| = 3403\n|V(H)| = 10501"),
    (["sizes", "--p", "83"], "|V(G)| = 3403\n|V(H)| = 10501"),
])
def test_simple_commands(argv, out, capsys):
    assert run(argv) == 0
    assert capsys.readouterr().out.strip() == out


def test_sizes_report(tmp_path):
    rep = tmp_path / "s.json"
    run(["sizes", "--p", "7", "--q", "3", "--report", str(rep)])
    assert json.loads(rep.read_text()) == {"p": 7, "q": 3, "c": 11, "G_vertices": 21,
                                           "H_vertices": 89, "H_vertices_closed_form": 89}


def test_mycielski(capsys, tmp_path):
    out = tmp_path / "m.col"
    assert run(["mycielski", "--seed", "c7", "--chain", "3,3,3,3", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "n: 607" in text and "odd_girth: 7" in text
    assert parse_dimacs(out.read_text()).n == 607


def test_build_and_maps(tmp_path):
    h = tmp_path / "h.col"
    assert run(["build", "--seed", "c7", "--q", "3", "--what", "H", "--out", str(h)]) == 0
    H = parse_dimacs(h.read_text())
    assert (H.n, H.num_edges()) == (89, 731)
    prod = tmp_path / "p.col"
    assert run(["build", "--seed", "c7", "--q", "3", "--what", "product", "--out", str(prod)]) == 0
    assert parse_dimacs(prod.read_text()).n == 1869
    maps = tmp_path / "maps.txt"
    assert run(["maps", "--seed", "c7", "--q", "3", "--out", str(maps)]) == 0
    named = parse_functions(maps.read_text(), 11)
    assert len(named) == 89 and named[0][0] == "g:1"
    assert dict(named)["mu:2:9"].image() == {1, 3, 4, 5, 6, 7, 9}


def test_cnf(tmp_path):
    out = tmp_path / "h.cnf"
    assert run(["cnf", "--seed", "c7", "--q", "3", "--out", str(out)]) == 0
    header = next(ln for ln in out.read_text().splitlines() if ln.startswith("p "))
    assert header.startswith("p cnf 979 ")


def test_file_seed(tmp_path, capsys):
    path = tmp_path / "f.col"
    write_dimacs(cycle(7), path)
    assert run(["verify", "--seed", f"file:{path}", "--q", "3"]) == 1
    assert run(["chif", "--seed", f"file:{path}"]) == 0
    assert capsys.readouterr().out.strip().endswith("7/3")


@pytest.mark.parametrize("argv", [
    ["verify", "--seed", "c7", "--q", "2"],
    ["verify", "--seed", "nonsense"],
    ["verify", "--seed", "file:/does/not/exist.col"],
    ["verify", "--q", "0"],
    ["frobnicate"],
    ["mycielski", "--chain", "3,x"],
])
def test_usage_errors(argv):
    assert run(argv) == 2


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hedet", "sizes", "--p", "83", "--q", "41"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.split() == ["|V(G)|", "=", "3403", "|V(H)|", "=", "10501"]

import csv
import json
import subprocess
import sys

import pytest

from oswnet.cli import main
from oswnet.harness import ExperimentConfig, run


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds(capsys):
    code, out, _ = cli(capsys, "bounds", "--n", "10")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 10 and doc["zeta3"] == 1.20206


def test_generate_rejects_zero(capsys):
    code, out, err = cli(capsys, "generate", "--n", "0")
    assert code == 1
    assert out == ""
    assert "size parameter" in err


def test_argparse_errors_are_validation_errors(capsys):
    assert cli(capsys, "generate")[0] == 1
    assert cli(capsys, "experiment", "bogus")[0] == 1
    assert cli(capsys, "route", "--n", "2", "--src", "1,1", "--dst", "0,0,2")[0] == 1
    assert cli(capsys, "route", "--n", "2", "--src", "1,1,1", "--dst", "0,0,2")[0] == 1
    assert cli(capsys, "bounds", "--n", "3,4")[0] == 1
    assert cli(capsys, "generate", "--n", "2", "--seed", "-4", "--osw")[0] == 1


def test_generate_schema(capsys):
    code, out, _ = cli(capsys, "generate", "--n", "2")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["vertices"]) == 18 and len(doc["edges"]) == 48
    assert all(i < j for i, j in doc["edges"])
    assert doc["edges"] == sorted(doc["edges"])
    assert doc["vertices"] == sorted(doc["vertices"])
    assert "long_range" not in doc


def test_generate_osw(capsys):
    code, out, _ = cli(capsys, "generate", "--n", "3", "--seed", "9", "--osw")
    doc = json.loads(out)
    lr = doc["long_range"]
    assert [row[0] for row in lr] == list(range(38))
    assert all(isinstance(row[2], bool) and row[0] != row[1] for row in lr)
    _, again, _ = cli(capsys, "generate", "--n", "3", "--seed", "9", "--osw")
    assert again == out


def test_route(capsys):
    code, out, _ = cli(capsys, "route", "--n", "4", "--seed", "1", "--src", "4,0,0", "--dst", "0,0,-4")
    doc = json.loads(out)
    assert code == 0
    assert doc["vertices"][0] == [4, 0, 0] and doc["vertices"][-1] == [0, 0, -4]
    assert doc["outcome"] == "delivered"
    assert sum(doc["phases"]) == doc["forwards"]


def test_route_strict_exit_code(monkeypatch, capsys):
    from oswnet import routing

    def bounce(G, u, t):
        return G.base.adjacency[0][0] if u == 0 else 0

    monkeypatch.setattr(routing, "next_hop", bounce)
    code, out, _ = cli(capsys, "route", "--n", "2", "--seed", "1", "--src=-2,0,0", "--dst", "2,0,0", "--strict")
    assert code == 2
    assert json.loads(out)["outcome"] == "loop_detected"
    code, _, _ = cli(capsys, "route", "--n", "2", "--seed", "1", "--src=-2,0,0", "--dst", "2,0,0")
    assert code == 0


def test_sphere_check(capsys):
    code, out, _ = cli(capsys, "sphere-check", "--n", "8", "--lambda", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["r"] == doc["radius_bound"]
    assert doc["max_distance"] <= 1 + 1e-9 and doc["within_lambda"]
    code, out, _ = cli(capsys, "sphere-check", "--n", "8", "--lambda", "1", "--r", "100")
    assert json.loads(out)["within_lambda"] is False
    assert cli(capsys, "sphere-check", "--n", "8", "--lambda", "0")[0] == 1


def test_census_csv_append(tmp_path, capsys):
    path = tmp_path / "c.csv"
    for seed in (1, 2):
        assert cli(capsys, "census", "--n", "4", "--seed", str(seed), "--csv", str(path))[0] == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "# oswnet-census/1"
    rows = list(csv.DictReader(lines[1:]))
    assert list(rows[0]) == [
        "n", "seed", "sss_undirected", "ssw", "sws", "sww", "wss", "wsw", "wws", "www", "nonbase_total",
        "rooted_fraction",
    ]
    assert [r["seed"] for r in rows] == ["1", "2"]
    assert all(r["sss_undirected"] == "128" for r in rows)
    for r in rows:
        assert int(r["nonbase_total"]) == sum(int(r[c]) for c in ("ssw", "sws", "sww", "wss", "wsw", "wws", "www"))


def test_csv_schema_mismatch_refused(tmp_path, capsys):
    path = tmp_path / "x.csv"
    assert cli(capsys, "census", "--n", "2", "--csv", str(path))[0] == 0
    code, _, err = cli(capsys, "experiment", "routing", "--n", "2", "--trials", "3", "--csv", str(path))
    assert code == 1 and "schema" in err


def test_census_exact(capsys):
    code, out, _ = cli(capsys, "census", "--exact-n1")
    doc = json.loads(out)
    assert doc["expected_nonbase_c3"] == "24/17"
    assert doc["total_probability"] == "1"


def test_experiment_routing_csv(tmp_path, capsys):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["experiment", "routing", "--n", "2,4", "--trials", "25", "--seed", "42"]
    c1, o1, _ = cli(capsys, *args, "--csv", str(p1))
    c2, o2, _ = cli(capsys, *args, "--csv", str(p2), "--threads", "3")
    assert c1 == c2 == 0
    assert o1 == o2
    assert p1.read_bytes() == p2.read_bytes()
    lines = p1.read_text().splitlines()
    assert lines[0] == "# oswnet-routing/1"
    header = lines[1].split(",")
    assert header[:7] == ["n", "seed", "trial", "src", "dst", "forwards", "outcome"]
    assert header[7:] == [f"phase{j}" for j in range(4)]
    rows = list(csv.reader(lines[2:]))
    assert len(rows) == 50
    for r in rows:
        assert sum(map(int, r[7:])) == int(r[5])
    summary = json.loads(o1)["results"]
    assert all(s["within_routing_upper"] and s["delivery_rate"] == 1.0 for s in summary)


def test_experiment_census(tmp_path, capsys):
    p = tmp_path / "c.csv"
    code, out, _ = cli(capsys, "experiment", "census", "--n", "2,4", "--trials", "10", "--seed", "5", "--csv", str(p))
    assert code == 0
    lines = p.read_text().splitlines()
    assert lines[1].startswith("n,seed,trial,sss_undirected")
    assert len(lines) == 2 + 20
    res = json.loads(out)["results"]
    assert all(r["events_within_bounds"] and r["within_eu_bound"] for r in res)


def test_json_output_file(tmp_path, capsys):
    p = tmp_path / "b.json"
    code, out, _ = cli(capsys, "bounds", "--n", "3", "--json", str(p))
    assert code == 0 and out == ""
    assert json.loads(p.read_text())["n"] == 3


def test_run_config_directly():
    import io

    buf = io.StringIO()
    assert run(ExperimentConfig(command="bounds", ns=[2]), out=buf) == 0
    assert json.loads(buf.getvalue())["n"] == 2
    err = io.StringIO()
    assert run(ExperimentConfig(command="bounds", ns=[2], threads=0), out=buf, err=err) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "oswnet", "bounds", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 2

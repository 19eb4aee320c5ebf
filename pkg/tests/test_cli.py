import json
import subprocess
import sys

import pytest

from online_coloring import algorithms as A
from online_coloring.cli import main


def cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "online_coloring", *args], capture_output=True, text=True, cwd=cwd)


def test_generate_path(tmp_path):
    r = cli("generate", "--family", "path", "--n", "2", "--out", str(tmp_path / "g.txt"))
    assert r.returncode == 0
    assert (tmp_path / "g.txt").read_text() == "2 1\n0 1\n"
    assert r.stdout == "" and "path" in r.stderr


def test_generate_to_stdout():
    r = cli("generate", "--family", "star", "--n", "3")
    assert r.stdout == "3 2\n0 1\n0 2\n"


def test_random_families_need_a_seed():
    r = cli("generate", "--family", "random-labeled-tree", "--n", "5")
    assert r.returncode == 2 and "--seed" in r.stderr


def test_unknown_flag_is_a_usage_error():
    assert cli("generate", "--family", "path", "--n", "2", "--colour").returncode == 2
    assert cli("frobnicate").returncode == 2


def test_exact_on_p4(tmp_path):
    main(["generate", "--family", "path", "--n", "4", "--out", str(tmp_path / "p4.txt")])
    r = cli("exact", "--in", str(tmp_path / "p4.txt"), "--algo", "first-fit")
    data = json.loads(r.stdout)
    assert data["expectation"] == "9/4" and data["probabilities"]["3"] == "1/4"


def test_adversary_output(tmp_path):
    r = cli("adversary", "--ell", "5", "--algo", "advice-first-fit", "--tree-out", str(tmp_path / "t.txt"))
    data = json.loads(r.stdout)
    assert data["verdict"] == "forced" and data["X"] == 5 and data["vertices"] == 12
    assert (tmp_path / "t.txt").read_text() == data["edge_list"]
    assert (tmp_path / "t.txt").read_text().startswith("12 11\n")
    assert "forced(5)" in r.stderr


def test_generate_run_replay_round_trip(tmp_path, capsys):
    g = str(tmp_path / "g.txt")
    tr = str(tmp_path / "t.json")
    assert main(["generate", "--family", "random-labeled-tree", "--n", "40", "--seed", "3", "--out", g]) == 0
    assert main(["run", "--in", g, "--algo", "advice-cbip", "--order", "random:7", "--error-mode", "random",
                 "--k", "5", "--seed", "2", "--out", tr]) == 0
    data = json.loads(open(tr).read())
    assert data["seeds"] == {"order": 7, "errors": 2} and data["k"] == 5
    out = str(tmp_path / "again.json")
    assert main(["run", "--in", g, "--algo", "advice-cbip", "--replay", tr, "--out", out]) == 0
    again = json.loads(open(out).read())
    assert [s["color"] for s in again["steps"]] == [s["color"] for s in data["steps"]]


def test_run_with_explicit_order_and_errors(tmp_path, capsys):
    g = str(tmp_path / "p.txt")
    main(["generate", "--family", "path", "--n", "4", "--out", g])
    capsys.readouterr()
    assert main(["run", "--in", g, "--algo", "first-fit", "--order", "0,1,3,2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["X"] == 3
    assert main(["run", "--in", g, "--algo", "parity-first-fit", "--error-mode", "explicit", "--errors", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["k"] == 1
    assert main(["run", "--in", g, "--algo", "first-fit", "--order", "0,1,1,2"]) == 1
    assert main(["run", "--in", g, "--algo", "first-fit", "--k", "2"]) == 2
    assert main(["run", "--in", g, "--algo", "advice-first-fit", "--error-mode", "random", "--k", "9",
                 "--seed", "1"]) == 1


def test_domain_errors(tmp_path):
    tri = tmp_path / "tri.txt"
    tri.write_text("3 3\n0 1\n1 2\n0 2\n")
    r = cli("run", "--in", str(tri), "--algo", "cbip")
    assert r.returncode == 1 and "odd cycle" in r.stderr
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    r = cli("run", "--in", str(bad), "--algo", "first-fit")
    assert r.returncode == 1 and "line" in r.stderr
    assert cli("check-bounds", "--kind", "cbip-size", "--n", "100").returncode == 1


def test_check_bounds(capsys):
    assert main(["check-bounds", "--kind", "first-fit-tail", "--n", "100", "--ell", "9"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]["value"]["exact"] == "125/4536"
    assert main(["check-bounds", "--kind", "advice-first-fit-errors", "--k", "4", "--observed", "6"]) == 3
    assert json.loads(capsys.readouterr().out)[0]["violated"] is True
    assert main(["check-bounds", "--kind", "factorial-growth", "--c", "2.718281828459045", "--n", "65536"]) == 0
    assert json.loads(capsys.readouterr().out)[0]["value"]["ell"] == 11
    assert main(["check-bounds", "--n", "100", "--ell", "9"]) == 0


def test_experiment_json_and_csv(tmp_path, capsys):
    args = ["experiment", "--family", "random-labeled-tree", "--n", "100", "--algo", "first-fit,advice-first-fit",
            "--k", "0,3", "--trials", "10", "--seed", "4"]
    assert main(args) == 0
    first = json.loads(capsys.readouterr().out)
    assert len(first["cells"]) == 3
    assert main(args + ["--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "cell,n,k,algorithm,trials,mean,max,bound,margin"
    assert main(["experiment", "--family", "random-labeled-tree", "--n", "100", "--algo", "first-fit",
                 "--trials", "10"]) == 2


def test_experiment_config_file(tmp_path, capsys):
    cfg = {"instances": [{"family": "path", "n": 6}], "algorithms": ["first-fit"], "trials": 20, "seed": 3}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["experiment", "--config", str(path)]) == 0
    a = json.loads(capsys.readouterr().out)
    assert main(["experiment", "--config", str(path)]) == 0
    b = json.loads(capsys.readouterr().out)
    a.pop("wall_clock_seconds"), b.pop("wall_clock_seconds")
    assert a == b


def test_sweep(capsys):
    assert main(["sweep", "--family", "random-labeled-tree", "--n", "100", "--algo", "advice-first-fit",
                 "--k", "0,1,8", "--trials", "10", "--seed", "1"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert [r["k"] for r in rows] == [0, 1, 8] and rows[0]["max"] == 2


def test_verify_claims_subset(tmp_path):
    out = tmp_path / "claims.json"
    r = cli("verify-claims", "--quick", "--seed", "3", "--only", "1,5,8,9", "--out", str(out))
    assert r.returncode == 0
    data = json.loads(out.read_text())
    assert [c["id"] for c in data["claims"]] == [1, 5, 8, 9] and data["all_passed"]
    assert r.stderr.count("[PASS]") == 4
    assert cli("verify-claims", "--quick").returncode == 2


# -- mutation smoke test ---------------------------------------------------------

class MaxPlusOne(A.FirstFit):
    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        return max(neighbor_colors, default=0) + 1


class WrongShore(A.CBip):
    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        self._merge(vertex, neighbors)
        root, parity = self.state.find(vertex)
        c = A._lowest_clear(self.state.shores[root][parity])
        self.state.add_color(vertex, c)
        return c


class AdviceFirstFitIgnoringAdvice(A.AdviceFirstFit):
    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        return A.FirstFit.color_next(self, vertex, neighbors, neighbor_colors)


class AdviceCBipIgnoringAdvice(A.AdviceCBip):
    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        return A.CBip.color_next(self, vertex, neighbors, neighbor_colors)


class ParityFirstFitIgnoringAdvice(A.ParityFirstFit):
    def color_next(self, vertex, neighbors, neighbor_colors, advice=None):
        return A.FirstFit.color_next(self, vertex, neighbors, neighbor_colors)


def test_verify_claims_passes_on_the_real_algorithms(capsys):
    assert main(["verify-claims", "--quick", "--seed", "1", "--only", "1,2,3,4,5,6,7,8,9"]) == 0


@pytest.mark.parametrize("name, mutant", [
    ("first-fit", MaxPlusOne),
    ("cbip", WrongShore),
    ("advice-first-fit", AdviceFirstFitIgnoringAdvice),
    ("advice-cbip", AdviceCBipIgnoringAdvice),
    ("parity-first-fit", ParityFirstFitIgnoringAdvice),
])
def test_verify_claims_catches_mutants(monkeypatch, capsys, name, mutant):
    monkeypatch.setitem(A.ALGORITHMS, name, mutant)
    assert main(["verify-claims", "--quick", "--seed", "1", "--only", "1,2,3,4,5,6,7,8,9"]) == 3
    assert "FAIL" in capsys.readouterr().err

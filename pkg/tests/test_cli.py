"""Command-line verbs, exit codes and deterministic JSON."""

import json
import subprocess
import sys

import pytest

from levelrank.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


def test_upsilon_example(capsys):
    code, doc, out = run(capsys, "upsilon", "--n", "2", "--e", "2", "--k", "1")
    assert code == 0 and doc == {"result": 3}


def test_residue_example(capsys):
    code, doc, _ = run(capsys, "residue", "--nu", "3", "--e", "2", "--lambda", "[[2,1]]")
    assert code == 0 and doc == {"alpha": {"0": 2, "1": 1}}


def test_precondition_error_exit_code(capsys):
    code, doc, _ = run(capsys, "upsilon", "--n", "2", "--e", "1", "--k", "0")
    assert code == 2 and doc["error"] == "domain"


def test_malformed_json_reports_location(capsys):
    code, doc, _ = run(capsys, "residue", "--nu", "3", "--e", "2", "--lambda", "[[2,1]")
    assert code == 2
    assert "line 1 column" in doc["message"]


def test_malformed_json_file(tmp_path, capsys):
    path = tmp_path / "alg.json"
    path.write_text('{"vertices": [1,\n "x"')
    code, doc, _ = run(capsys, "qdual", "--in", str(path))
    assert code == 2 and "line 2 column" in doc["message"]


def test_unknown_verb_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_qdual_and_koszul(tmp_path, capsys):
    alg = {"vertices": [1, 2, 3], "arrows": [{"name": "a", "src": 1, "dst": 2}, {"name": "b", "src": 2, "dst": 3}],
           "relations": [[{"path": ["a", "b"], "coeff": 1}]]}
    src, dst = tmp_path / "alg.json", tmp_path / "dual.json"
    src.write_text(json.dumps(alg))
    code, _, _ = run(capsys, "qdual", "--in", str(src), "--out", str(dst))
    assert code == 0
    dual = json.loads(dst.read_text())
    assert dual["relations"] == [] and sum(dual["graded_dims"]) == 6
    code, doc, _ = run(capsys, "koszul-check", "--in", str(src), "--steps", "4")
    assert code == 0 and doc["ok"] and doc["first_nonlinear_step"] is None


def test_other_verbs(capsys):
    cases = [
        ("orbit", "--lambda", "3,1", "--e", "2"),
        ("fock", "apply", "--nu", "2", "--e", "2", "--op", "f", "--i", "1", "--vector", "[[[3,1],1]]"),
        ("fock", "check", "--nu", "1,1", "--e", "2", "--kind", "chevalley"),
        ("hecke", "dim", "--l", "2", "--d", "2"),
        ("hecke", "check", "--d", "3", "--triples", "5"),
        ("center", "build", "--mu", "1,1", "--v", "s1", "--cutoff", "6", "--json"),
        ("poincare", "--mu", "1,1", "--v", "s1", "--e", "2"),
        ("ktheory", "--mu", "1,1", "--k", "1", "--nu", "1,1", "--v", "s1"),
    ]
    for argv in cases:
        code, doc, _ = run(capsys, *argv)
        assert code == 0, argv
    _, doc, _ = run(capsys, *cases[0])
    assert doc["antidominant"] == [1, 3]
    _, doc, _ = run(capsys, *cases[1])
    assert doc["result"] == [[[3, 2], "1"], [[4, 1], "1"]]
    _, doc, _ = run(capsys, *cases[3])
    assert doc["dimension"] == 8


def test_output_is_deterministic(capsys):
    argv = ["center", "build", "--mu", "1,1", "--v", "s1", "--cutoff", "4"]
    first = run(capsys, *argv)[2]
    second = run(capsys, *argv)[2]
    assert first == second
    keys = list(json.loads(first))
    assert keys == sorted(keys)


def test_verify_all_smoke(capsys):
    code, doc, _ = run(capsys, "verify-all", "--profile", "smoke", "--json")
    assert code == 0 and doc["passed"] and doc["seed"] == 7
    assert [c["criterion"] for c in doc["criteria"]] == list(range(1, 12))


def test_cutoff_override(monkeypatch, capsys):
    monkeypatch.setenv("LEVELRANK_CUTOFF", "2")
    code, doc, _ = run(capsys, "verify-all", "--profile", "smoke", "--only", "7", "--json")
    assert code == 0 and doc["cutoff"] == 2
    monkeypatch.setenv("LEVELRANK_CUTOFF", "many")
    assert run(capsys, "verify-all", "--profile", "smoke", "--json")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "levelrank", "upsilon", "--n", "-1", "--e", "2", "--k", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"result": -2}


def test_center_compare_exit_codes(capsys):
    assert run(capsys, "center", "compare", "--mu", "1,1", "--v", "s1*s0")[0] == 0
    code, doc, _ = run(capsys, "center", "compare", "--mu", "1,1", "--v", "s1*s0", "--mode", "simple")
    assert code == 3 and doc["hilbert"] == {"0": 1, "1": 3}


def test_level_must_match_composition(capsys):
    assert run(capsys, "poincare", "--mu", "1,2", "--v", "s1", "--e", "3")[0] == 2

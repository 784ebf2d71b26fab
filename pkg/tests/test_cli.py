import json

import numpy as np
import pytest

from relq.cli import main


@pytest.fixture
def problem_file(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({
        "A": [[0.5, 0.3], [0.7, 0.3]],
        "b": [0.5, 0.3],
        "composition": "max-min",
    }))
    return str(f)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_feasible(capsys, problem_file):
    code, out, _ = run(capsys, ["solve", problem_file, "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["feasible"]
    assert data["x_hat"] == [1.0, 0.5]
    mins = sorted(tuple(m) for m in data["minimals"])
    assert mins == [(0.0, 0.5), (0.5, 0.0)]


@pytest.mark.parametrize("method", ["lambda", "pattern"])
def test_solve_methods_agree(capsys, problem_file, method):
    code, out, _ = run(capsys, ["solve", problem_file, "--method", method,
                                "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert sorted(tuple(m) for m in data["minimals"]) == [(0.0, 0.5), (0.5, 0.0)]


def test_solve_infeasible_exit_2(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"A": [[0.1]], "b": [0.9]}))
    code, out, _ = run(capsys, ["solve", str(f), "--format", "json"])
    assert code == 2
    assert not json.loads(out)["feasible"]


def test_solve_parse_error_exit_1(capsys, tmp_path):
    f = tmp_path / "garbage.json"
    f.write_text("{not json")
    code, _, err = run(capsys, ["solve", str(f)])
    assert code == 1
    assert "error" in err


def test_optimize(capsys, problem_file):
    code, out, _ = run(capsys, ["optimize", problem_file, "--c", "2,1",
                                "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["Z"] == pytest.approx(0.5)
    assert data["certificate"] == "exact-ip"


def test_compose(capsys, tmp_path):
    p = tmp_path / "P.csv"
    q = tmp_path / "Q.csv"
    p.write_text("0.8,0.0\n0.2,0.9\n")
    q.write_text("0.6\n0.5\n")
    code, out, _ = run(capsys, ["compose", str(p), str(q), "--format", "csv"])
    assert code == 0
    vals = [float(line.split(",")[0]) for line in out.strip().splitlines()]
    assert vals == [0.6, 0.5]


def test_compose_dim_mismatch(capsys, tmp_path):
    p = tmp_path / "P.csv"
    q = tmp_path / "Q.csv"
    p.write_text("0.8,0.0\n")
    q.write_text("0.6\n")
    code, _, err = run(capsys, ["compose", str(p), str(q)])
    assert code == 1
    assert "1x2" in err and "1x1" in err


def test_compose_neutro(capsys, tmp_path):
    p = tmp_path / "P.csv"
    q = tmp_path / "Q.csv"
    p.write_text("# mode: absorbing\n0.3,I,1\n0,0.9,0.2\n0.7,0,0.4\n")
    q.write_text("# mode: absorbing\n0.1\nI\n0\n")
    code, out, _ = run(capsys, ["compose", str(p), str(q),
                                "--mode", "absorbing", "--format", "csv"])
    assert code == 0
    lines = [l for l in out.strip().splitlines() if not l.startswith("#")]
    assert lines == ["I", "I", "0.1"]


def test_learn_rule_k(capsys, tmp_path):
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"inputs": [[0.5, 0.7]], "targets": [[0.5, 0.3]]}))
    code, out, _ = run(capsys, ["learn", str(f), "--rule", "K",
                                "--tnorm", "product", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["converged"]
    W = np.array(data["W"])
    img = np.array([max(W[k, j] * [0.5, 0.7][k] for k in range(2))
                    for j in range(2)])
    assert np.allclose(img, [0.5, 0.3])


def test_diagnose(capsys, tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps({
        "disorders": ["d1", "d2"],
        "manifestations": ["m1", "m2"],
        "certain": {"d1": ["m1"], "d2": ["m2"]},
        "forbidden": {"d1": [], "d2": []},
        "observed_present": ["m1"],
        "observed_absent": ["m2"],
    }))
    code, out, _ = run(capsys, ["diagnose", str(f), "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["D_hat"] == ["d1"]


def test_demo_unknown_lists_names(capsys):
    code, _, err = run(capsys, ["demo", "nope"])
    assert code == 1
    assert "pallavan" in err


def test_demo_pallavan_blocks_3(capsys):
    code, out, _ = run(capsys, ["demo", "pallavan", "--blocks", "3"])
    assert code == 0
    hours = [int(line.split("hour ending ")[1].split()[0])
             for line in out.strip().splitlines()]
    assert hours == [10, 16, 20]


def test_demo_deterministic(capsys):
    code1, out1, _ = run(capsys, ["demo", "hiv-triangle", "--round", "2"])
    code2, out2, _ = run(capsys, ["demo", "hiv-triangle", "--round", "2"])
    assert code1 == code2 == 0
    assert out1 == out2


def test_round_flag_half_up(capsys, tmp_path):
    p = tmp_path / "P.csv"
    q = tmp_path / "Q.csv"
    p.write_text("0.625\n")
    q.write_text("1.0\n")
    code, out, _ = run(capsys, ["compose", str(p), str(q),
                                "--format", "csv", "--round", "2"])
    assert code == 0
    assert out.strip() == "0.63"

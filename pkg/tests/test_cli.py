import json

import pytest

from locgame.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_star(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "star", "5")
    assert code == 0 and out.splitlines()[0] == "6 5"
    path = tmp_path / "h.txt"
    assert main(["gen", "pg2", "2", "--out", str(path)]) == 0
    assert path.read_text().splitlines()[0] == "14 21"
    code, out, _ = run(capsys, "gen", "mary", "3", "2")
    assert out.splitlines()[0] == "13 12"


def test_gen_random_needs_seed(capsys):
    assert run(capsys, "gen", "random_tree", "6")[0] == 2
    code, out, _ = run(capsys, "gen", "random_tree", "6", "--seed", "1")
    assert code == 0 and out.splitlines()[0] == "6 5"


@pytest.mark.parametrize("argv,outcome,t", [
    (["--family", "star", "--params", "4", "--cops", "1"], "finite", 3),
    (["--family", "heawood", "--cops", "3"], "finite", 2),
    (["--family", "cycle", "--params", "4", "--cops", "1"], "robber_wins", None),
])
def test_solve(capsys, argv, outcome, t):
    code, out, _ = run(capsys, "solve", *argv)
    data = json.loads(out)
    assert code == 0 and data["outcome"] == outcome and data["capture_time"] == t
    assert data["schema_version"] == 1


def test_solve_from_file(capsys, tmp_path):
    path = tmp_path / "g.txt"
    main(["gen", "fig2_H", "--out", str(path)])
    code, out, _ = run(capsys, "solve", "--graph", str(path), "--cops", "1")
    assert json.loads(out)["capture_time"] == 3


def test_solve_budget_abort(capsys):
    code, out, _ = run(capsys, "solve", "--family", "pg2", "--params", "3", "--cops", "2", "--budget-states", "20")
    assert code == 3 and json.loads(out)["outcome"] == "aborted"


def test_json_byte_identical(capsys):
    a = run(capsys, "solve", "--family", "fig2_H", "--cops", "1")[1]
    b = run(capsys, "solve", "--family", "fig2_H", "--cops", "1")[1]
    assert a == b


def test_usage_errors(capsys):
    assert run(capsys, "solve", "--family", "nosuch", "--cops", "1")[0] == 2
    assert run(capsys, "solve", "--graph", "/nonexistent", "--cops", "1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["solve", "--family", "star", "--params", "3"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["solve", "--family", "star", "--params", "3", "--cops", "1", "--budget-states", "0"])
    assert info.value.code == 2


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--family", "star", "--params", "5", "--strategy", "leaf_probe_all")
    data = json.loads(out)
    assert code == 0 and data["worst_case_rounds"] == 1 and data["status"] == "captured"
    assert run(capsys, "eval", "--family", "heawood", "--strategy", "bogus")[0] == 2
    code, out, _ = run(capsys, "eval", "--family", "cycle", "--params", "4",
                       "--strategy", "scripted_probes:probes=0", "--max-rounds", "2")
    assert json.loads(out)["status"] == "exceeded"
    code, out, _ = run(capsys, "eval", "--family", "mary", "--params", "3", "2",
                       "--strategy", "mary_low:m=3,h=2,k=2", "--format", "text")
    assert "worst_case_rounds=2" in out
    assert run(capsys, "eval", "--family", "star", "--params", "5", "--strategy", "leaf_probe_all", "--cops", "2")[0] == 2


def test_decompose_and_td_eval(capsys, tmp_path):
    code, out, _ = run(capsys, "decompose", "--family", "cycle", "--params", "4")
    data = json.loads(out)
    assert data["width"] == 2
    path = tmp_path / "td.json"
    path.write_text(out)
    code, out, _ = run(capsys, "eval", "--family", "cycle", "--params", "4", "--strategy", "td_center_out",
                       "--td", str(path))
    assert code == 0 and json.loads(out)["worst_case_rounds"] <= data["radius"] + 1
    code, out, _ = run(capsys, "decompose", "--family", "cycle", "--params", "4", "--check", str(path))
    assert code == 0 and json.loads(out)["valid"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"bags": [[0, 1], [2, 3]], "edges": [[0, 1]], "kind": "path"}))
    code, out, _ = run(capsys, "decompose", "--family", "cycle", "--params", "4", "--check", str(bad))
    assert code == 1 and not json.loads(out)["valid"]


def test_locnum_and_mdim(capsys):
    code, out, _ = run(capsys, "locnum", "--family", "cycle", "--params", "4", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0].startswith("schema_version,graph,k") and len(lines) == 3
    code, out, _ = run(capsys, "mdim", "--family", "grid", "--params", "8", "8")
    assert json.loads(out)["witness"] == [0, 7]


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify", "paper", "--only", "heawood")
    rows = out.strip().splitlines()
    assert code == 0 and len(rows) == 3  # header + 2 rows
    assert all(",pass," in r for r in rows[1:])
    assert run(capsys, "verify", "nosuch")[0] == 2
    assert run(capsys, "verify", "paper", "--only", "zzz")[0] == 2

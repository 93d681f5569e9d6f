import json

import pytest

from conncut.cli import main


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def grid_file(tmp_path):
    assert main(["gen", "--family", "grid", "--param", "rows=3", "--param", "cols=3",
                 "--out", str(tmp_path / "g.cmc")]) == 0
    return str(tmp_path / "g.cmc")


def test_gen_solve_round_trip(grid_file, capsys):
    assert main(["solve", grid_file, "--algo", "bcmc"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("value ")


def test_exact_bf_json(grid_file, capsys):
    assert main(["exact", grid_file, "--method", "bf", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == "8" and data["connected"] is True


def test_exact_tw_matches_bf(grid_file, capsys):
    assert main(["exact", grid_file, "--method", "tw", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "8"


def test_ptas_with_report(grid_file, tmp_path, capsys):
    rep = str(tmp_path / "report.json")
    assert main(["ptas", grid_file, "--epsilon", "1/2", "--report", rep]) == 0
    data = json.loads(open(rep).read())
    assert data["k"] == 6 and data["exact"] is True


def test_exit_code_invalid_input(tmp_path, capsys):
    bad = write(tmp_path / "bad.cmc", "p cmc 2 1\ne 1 1 1\n")
    assert main(["solve", bad]) == 1


def test_exit_code_size_guard(tmp_path, capsys):
    lines = ["p cmc 30 29"] + [f"e {i} {i + 1} 1" for i in range(1, 30)]
    big = write(tmp_path / "big.cmc", "\n".join(lines) + "\n")
    assert main(["exact", big, "--method", "bf"]) == 2
    assert main(["exact", big, "--method", "bf", "--force"]) == 0


def test_exit_code_missing_file():
    assert main(["solve", "/nonexistent/file.cmc"]) == 1


def test_validate_pmsat(tmp_path, capsys):
    good = write(tmp_path / "f.pmsat", "p pmsat 3 2\ncp 1 2 3\ncn 1 3\n")
    assert main(["validate", "pmsat", good]) == 0
    bad = write(tmp_path / "b.pmsat", "p pmsat 4 2\ncp 1 3\ncp 2 4\n")
    assert main(["validate", "pmsat", bad]) == 1


def test_validate_td(grid_file, tmp_path, capsys):
    # produce a decomposition for the grid and validate it via the CLI
    from conncut.io import read_graph, write_td
    from conncut.treewidth import build_decomposition

    doc = read_graph(grid_file)
    td = build_decomposition(doc.graph)
    tdf = str(tmp_path / "g.td")
    write_td(tdf, td, doc.graph.n)
    assert main(["validate", "td", tdf, "--graph", grid_file]) == 0


def test_exact_tw_with_external_td(grid_file, tmp_path, capsys):
    from conncut.io import read_graph, write_td
    from conncut.treewidth import build_decomposition

    doc = read_graph(grid_file)
    tdf = str(tmp_path / "g.td")
    write_td(tdf, build_decomposition(doc.graph), doc.graph.n)
    assert main(["exact", grid_file, "--method", "tw", "--td", tdf,
                 "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "8"


def test_validate_coloring(grid_file):
    assert main(["validate", "coloring", grid_file, "--k", "3"]) == 0


def test_reduce_sat(tmp_path, capsys):
    f = write(tmp_path / "f.pmsat", "p pmsat 2 2\ncp 1 2\ncn 1 2\n")
    gout = str(tmp_path / "gadget.cmc")
    mout = str(tmp_path / "gadget.json")
    assert main(["reduce-sat", f, "--out-graph", gout, "--out-meta", mout]) == 0
    meta = json.loads(open(mout).read())
    assert meta["K"] == 16
    from conncut.io import read_graph

    doc = read_graph(gout)
    assert doc.graph.n == len(meta["roles"])


def test_bench_cli(tmp_path, capsys):
    suite = write(tmp_path / "suite.json", json.dumps({
        "instances": [{"family": "path", "params": {"n": 3}, "seed": 0}],
        "algorithms": [{"name": "bcmc"}],
        "oracle": True,
    }))
    out = str(tmp_path / "r.csv")
    assert main(["bench", suite, "--out", out]) == 0
    text = open(out).read()
    assert text.startswith("instance,") and ",bcmc," in text
